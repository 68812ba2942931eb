#include "mfsr/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfsr/error.hpp"
#include "mfsr/random.hpp"

namespace mfsr {

double GaussianSource::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Image add_clipped_awgn(const Image& img, double sigma_noise, std::uint64_t seed) {
  if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) {
    throw ContractError("noise sigma must be finite and >= 0");
  }
  if (sigma_noise == 0.0) return img;
  GaussianSource gauss(seed);
  Image out = img;
  for (double& v : out.pixels()) v = std::clamp(v + sigma_noise * gauss(), 0.0, 255.0);
  return out;
}

}  // namespace mfsr
