#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "mfsr/blur.hpp"
#include "mfsr/degrade.hpp"
#include "mfsr/error.hpp"
#include "mfsr/image_io.hpp"
#include "mfsr/manifest.hpp"
#include "mfsr/metrics.hpp"
#include "mfsr/resample.hpp"
#include "mfsr/warp.hpp"
#include "support.hpp"

namespace mfsr {
namespace {

// E[(clamp(c + s Z, 0, 255) - c)^2] by Simpson integration over Z.
double clipped_noise_power(double c, double s) {
  const int n = 4000;
  const double lo = -10.0;
  const double h = 20.0 / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double z = lo + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double d = std::min(255.0, std::max(0.0, c + s * z)) - c;
    acc += w * d * d * std::exp(-0.5 * z * z);
  }
  return acc * h / 3.0 / std::sqrt(2.0 * 3.14159265358979323846);
}

// Mean squared forward difference along x and y.
double roughness(const Image& a) {
  double acc = 0.0;
  for (int y = 0; y + 1 < a.height(); ++y) {
    for (int x = 0; x + 1 < a.width(); ++x) {
      const double dx = a(x + 1, y) - a(x, y);
      const double dy = a(x, y + 1) - a(x, y);
      acc += dx * dx + dy * dy;
    }
  }
  return acc / static_cast<double>(a.size());
}

TEST(RandomDeformation, AmplitudeContract) {
  const FlowField zero = random_deformation(30, 20, 0.0, 5.0, 1);
  EXPECT_EQ(zero, FlowField(30, 20));
  const FlowField f = random_deformation(30, 20, 3.0, 5.0, 1);
  double peak = 0.0;
  for (std::size_t i = 0; i < f.u.size(); ++i) peak = std::max(peak, std::hypot(f.u[i], f.v[i]));
  EXPECT_NEAR(peak, 3.0, 1e-12);
  EXPECT_EQ(f, random_deformation(30, 20, 3.0, 5.0, 1));
  EXPECT_NE(f, random_deformation(30, 20, 3.0, 5.0, 2));
}

TEST(RandomDeformation, SmootherFieldsVaryLess) {
  double prev = 1e300;
  for (double s : {2.0, 8.0, 32.0}) {
    const FlowField f = random_deformation(64, 64, 3.0, s, 9);
    const double v = roughness(f.u) + roughness(f.v);
    EXPECT_LT(v, prev) << "smoothness " << s;
    prev = v;
  }
}

TEST(GenerateDataset, IdentityStagesReproduceTheScene) {
  const Image hr = test::random_image(20, 16, 3);
  DatasetSpec spec;
  spec.num_frames = 4;
  spec.blur_sigma = 0.0;
  spec.scale_factor = 1.0;
  spec.noise_sigma = 0.0;
  spec.deformation_amplitude = 0.0;
  const Dataset ds = generate_dataset(hr, spec);
  ASSERT_EQ(ds.frames.size(), 4u);
  for (const Image& f : ds.frames) EXPECT_EQ(f, hr);
}

TEST(GenerateDataset, ShapesRangeReferenceAndDeterminism) {
  const Image hr = test::smooth_scene(40, 30);
  DatasetSpec spec;
  spec.num_frames = 5;
  spec.seed = 17;
  const Dataset ds = generate_dataset(hr, spec);
  EXPECT_EQ(ds.reference_index, 4);
  EXPECT_EQ(ds.scale.lr_width, 20);
  EXPECT_EQ(ds.scale.lr_height, 15);
  ASSERT_EQ(ds.flows.size(), 5u);
  EXPECT_EQ(ds.flows[4], FlowField(40, 30));
  for (int i = 0; i < 4; ++i) EXPECT_NE(ds.flows[i], FlowField(40, 30));
  for (const Image& f : ds.frames) {
    EXPECT_EQ(f.width(), 20);
    EXPECT_EQ(f.height(), 15);
    EXPECT_GE(min_value(f), 0.0);
    EXPECT_LE(max_value(f), 255.0);
  }
  const Dataset again = generate_dataset(hr, spec);
  EXPECT_EQ(again.frames, ds.frames);
  EXPECT_EQ(again.flows, ds.flows);
  spec.seed = 18;
  EXPECT_NE(generate_dataset(hr, spec).frames[0], ds.frames[0]);
}

TEST(GenerateDataset, FrameIMatchesFlowI) {
  const Image hr = test::smooth_scene(32, 32);
  DatasetSpec spec;
  spec.num_frames = 3;
  spec.noise_sigma = 0.0;
  const Dataset ds = generate_dataset(hr, spec);
  for (int i = 0; i < 3; ++i) {
    const Image pred = downsample(blur(warp_forward(hr, ds.flows[i]), BlurSpec{1.0}), ds.scale);
    EXPECT_EQ(pred, ds.frames[i]);
  }
}

TEST(GenerateDataset, NoisePowerMatchesClippedGaussianIntegral) {
  const Image hr = test::smooth_scene(128, 128);
  DatasetSpec spec;
  spec.num_frames = 3;
  spec.seed = 5;
  const Dataset ds = generate_dataset(hr, spec);
  for (std::size_t i = 0; i < ds.frames.size(); ++i) {
    double expected = 0.0;
    for (double c : ds.clean_frames[i].pixels()) expected += clipped_noise_power(c, 40.0);
    expected /= static_cast<double>(ds.clean_frames[i].size());
    EXPECT_NEAR(mse(ds.frames[i], ds.clean_frames[i]), expected, 0.1 * expected);
  }
}

TEST(GenerateDataset, RejectsBadSpecs) {
  DatasetSpec spec;
  spec.num_frames = 0;
  EXPECT_THROW(generate_dataset(Image(8, 8), spec), ContractError);
  spec = DatasetSpec{};
  spec.scale_factor = 0.5;
  EXPECT_THROW(validate(spec), ContractError);
}

TEST(Manifest, RoundTrip) {
  test::TempDir dir("manifest");
  const Image hr = test::smooth_scene(24, 18);
  DatasetSpec spec;
  spec.num_frames = 3;
  spec.scale_factor = 1.5;
  spec.seed = 99;
  const Dataset ds = generate_dataset(hr, spec);
  const auto path = write_dataset(dir.path() / "set", ds, spec, &hr);
  EXPECT_EQ(path.filename(), kManifestFileName);

  const LoadedDataset back = load_dataset(path);
  EXPECT_EQ(back.manifest.reference_index, 2);
  EXPECT_EQ(back.manifest.spec.seed, 99u);
  EXPECT_DOUBLE_EQ(back.manifest.scale.factor, 1.5);
  EXPECT_EQ(back.manifest.scale.lr_width, 16);
  ASSERT_EQ(back.frames.size(), 3u);
  ASSERT_TRUE(back.ground_truth.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t p = 0; p < ds.frames[i].size(); ++p) {
      EXPECT_EQ(back.frames[i][p], quantise_8bit(ds.frames[i][p]));
    }
    for (std::size_t p = 0; p < ds.flows[i].u.size(); ++p) {
      EXPECT_EQ(back.flows[i].u[p], static_cast<float>(ds.flows[i].u[p]));
    }
  }
}

TEST(Manifest, RejectsBrokenFiles) {
  test::TempDir dir("manifest");
  {
    std::ofstream out(dir / "bad.txt");
    out << "not-a-manifest\n";
  }
  EXPECT_THROW(read_manifest(dir / "bad.txt"), FormatError);
  EXPECT_THROW(read_manifest(dir / "missing.txt"), IoError);
}

}  // namespace
}  // namespace mfsr
