#include "mfsr/blur.hpp"

#include <cmath>
#include <string>

#include "mfsr/boundary.hpp"
#include "mfsr/error.hpp"

namespace mfsr {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ContractError("blur sigma must be finite and >= 0, got " + std::to_string(sigma));
  }
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(BlurSpec::kTruncation * sigma));
  std::vector<double> taps(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * k * k / (sigma * sigma));
    taps[k + radius] = w;
    total += w;
  }
  for (double& w : taps) w /= total;
  return taps;
}

Image blur(const Image& img, const BlurSpec& spec) {
  const std::vector<double> taps = gaussian_kernel(spec.sigma);
  if (taps.size() == 1) return img;
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = img.width();
  const int h = img.height();

  Image rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * img(reflect(x + k, w), y);
      rows(x, y) = acc;
    }
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * rows(x, reflect(y + k, h));
      out(x, y) = acc;
    }
  }
  return out;
}

}  // namespace mfsr
