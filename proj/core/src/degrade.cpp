#include "mfsr/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mfsr/blur.hpp"
#include "mfsr/error.hpp"
#include "mfsr/noise.hpp"
#include "mfsr/random.hpp"
#include "mfsr/warp.hpp"

namespace mfsr {

void validate(const DatasetSpec& spec) {
  if (spec.num_frames < 1) throw ContractError("a dataset needs at least one frame");
  if (!(spec.blur_sigma >= 0.0)) throw ContractError("blur sigma must be >= 0");
  if (!(spec.scale_factor >= 1.0)) throw ContractError("scale factor must be >= 1");
  if (!(spec.noise_sigma >= 0.0)) throw ContractError("noise sigma must be >= 0");
  if (!(spec.deformation_amplitude >= 0.0)) throw ContractError("amplitude must be >= 0");
  if (!(spec.deformation_smoothness >= 0.0)) throw ContractError("smoothness must be >= 0");
}

FlowField random_deformation(int width, int height, double amplitude, double smoothness,
                             std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw ContractError("deformation amplitude must be >= 0");
  FlowField flow(width, height);
  if (amplitude == 0.0) return flow;

  std::mt19937_64 engine(seed);
  auto uniform = [&] {
    return amplitude * (2.0 * static_cast<double>(engine() >> 11) * 0x1.0p-53 - 1.0);
  };
  for (std::size_t i = 0; i < flow.u.size(); ++i) {
    flow.u[i] = uniform();
    flow.v[i] = uniform();
  }
  flow.u = gaussian_smooth(flow.u, smoothness);
  flow.v = gaussian_smooth(flow.v, smoothness);

  double peak = 0.0;
  for (std::size_t i = 0; i < flow.u.size(); ++i) {
    peak = std::max(peak, std::hypot(flow.u[i], flow.v[i]));
  }
  if (peak > 0.0) {
    flow.u *= amplitude / peak;
    flow.v *= amplitude / peak;
  }
  return flow;
}

Dataset generate_dataset(const Image& hr, const DatasetSpec& spec) {
  validate(spec);
  Dataset ds;
  ds.scale = ScaleSpec::from_hr(hr.width(), hr.height(), spec.scale_factor);
  ds.reference_index = spec.num_frames - 1;
  const BlurSpec psf{spec.blur_sigma};
  for (int i = 0; i < spec.num_frames; ++i) {
    const auto stream = static_cast<std::uint64_t>(i);
    FlowField flow = i == ds.reference_index
                         ? FlowField(hr.width(), hr.height())
                         : random_deformation(hr.width(), hr.height(), spec.deformation_amplitude,
                                              spec.deformation_smoothness,
                                              derive_seed(spec.seed, 2 * stream));
    Image clean = downsample(blur(warp_forward(hr, flow), psf), ds.scale);
    ds.frames.push_back(
        add_clipped_awgn(clean, spec.noise_sigma, derive_seed(spec.seed, 2 * stream + 1)));
    ds.clean_frames.push_back(std::move(clean));
    ds.flows.push_back(std::move(flow));
  }
  return ds;
}

}  // namespace mfsr
