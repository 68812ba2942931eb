#include <benchmark/benchmark.h>

#include <random>

#include "mfsr/blur.hpp"
#include "mfsr/degrade.hpp"
#include "mfsr/diffusion.hpp"
#include "mfsr/optical_flow.hpp"
#include "mfsr/resample.hpp"
#include "mfsr/sector_diffusion.hpp"
#include "mfsr/solver.hpp"
#include "mfsr/warp.hpp"

namespace {

using namespace mfsr;

Image noise_image(int n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  Image img(n, n);
  for (double& v : img.pixels()) v = dist(rng);
  return img;
}

void BM_Blur(benchmark::State& state) {
  const Image u = noise_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(blur(u, BlurSpec{1.0}));
}
BENCHMARK(BM_Blur)->Arg(128)->Arg(256);

void BM_Downsample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image u = noise_image(n);
  const ScaleSpec s = ScaleSpec::from_hr(n, n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(downsample(u, s));
}
BENCHMARK(BM_Downsample)->Arg(256);

void BM_Upsample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScaleSpec s = ScaleSpec::from_hr(n, n, 2.0);
  const Image f = noise_image(s.lr_width);
  for (auto _ : state) benchmark::DoNotOptimize(upsample(f, s));
}
BENCHMARK(BM_Upsample)->Arg(256);

void BM_Warp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image u = noise_image(n);
  const FlowField w = random_deformation(n, n, 3.0, 20.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(warp_forward(u, w));
}
BENCHMARK(BM_Warp)->Arg(256);

void BM_WarpAdjoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image u = noise_image(n);
  const FlowField w = random_deformation(n, n, 3.0, 20.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(warp_adjoint(u, w));
}
BENCHMARK(BM_WarpAdjoint)->Arg(256);

void BM_EedOperator(benchmark::State& state) {
  const Image u = noise_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eed_operator(u, {40.0, 1.0}));
}
BENCHMARK(BM_EedOperator)->Arg(128)->Arg(256);

void BM_SdOperator(benchmark::State& state) {
  const Image u = noise_image(static_cast<int>(state.range(0)));
  const auto geo = build_sector_geometry(kDefaultSectorCount, kDefaultSectorRadius, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(sd_operator(u, {8.0, 0.6}, geo));
}
BENCHMARK(BM_SdOperator)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SrStep(benchmark::State& state) {
  const Image hr = noise_image(128);
  DatasetSpec spec;
  spec.num_frames = static_cast<int>(state.range(0));
  const Dataset ds = generate_dataset(hr, spec);
  SRProblem p;
  p.frames = ds.frames;
  p.flows = ds.flows;
  p.config.scale = ds.scale;
  p.config.regulariser = Regulariser::kEed;
  p.config.tau = default_sr_tau(Regulariser::kEed);
  const Reconstructor r(p);
  const Image u = r.initialise();
  for (auto _ : state) benchmark::DoNotOptimize(r.step(u));
}
BENCHMARK(BM_SrStep)->Arg(8)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_EstimateFlow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image a = gaussian_smooth(noise_image(n, 3), 2.0);
  const Image b = warp_forward(a, random_deformation(n, n, 2.0, 10.0, 4));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_flow(a, b, FlowParams{}));
}
BENCHMARK(BM_EstimateFlow)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
