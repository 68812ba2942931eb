#include "mfsr/diffusion.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mfsr/blur.hpp"
#include "mfsr/boundary.hpp"
#include "mfsr/error.hpp"

namespace mfsr {

double diffusivity(double x, double lambda) noexcept {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  const double r = lambda / x;
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double z = kDiffusivityConstant * (r4 * r4);
  // Two-term series is exact to double precision below 1e-8.
  if (z < 1e-8) return z - 0.5 * z * z;
  return -std::expm1(-z);
}

void validate(const DiffusivityParams& params) {
  if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
    throw ContractError("lambda must be positive, got " + std::to_string(params.lambda));
  }
  if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma)) {
    throw ContractError("sigma must be >= 0, got " + std::to_string(params.sigma));
  }
}

Image laplacian(const Image& u) {
  const int w = u.width();
  const int h = u.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const int ym = reflect(y - 1, h);
    const int yp = reflect(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect(x - 1, w);
      const int xp = reflect(x + 1, w);
      const double c = u(x, y);
      out(x, y) = (u(xm, y) - c) + (u(xp, y) - c) + (u(x, ym) - c) + (u(x, yp) - c);
    }
  }
  return out;
}

Image homogeneous_step(const Image& u, double tau) {
  if (!(tau > 0.0) || tau > kHomogeneousTauMax) {
    throw ContractError("homogeneous diffusion needs 0 < tau <= 0.25, got " + std::to_string(tau));
  }
  Image out = laplacian(u);
  out *= tau;
  out += u;
  return out;
}

DiffusionState homogeneous_step(const DiffusionState& state) {
  return {homogeneous_step(state.current, state.tau), state.step_count + 1, state.tau};
}

Image eed_operator(const Image& u, const DiffusivityParams& params) {
  validate(params);
  const int w = u.width();
  const int h = u.height();
  const Image us = gaussian_smooth(u, params.sigma);

  // Diffusion tensor entries [a b; b c] per pixel.
  const std::size_t n = u.size();
  std::vector<double> ta(n), tb(n), tc(n);
  for (int y = 0; y < h; ++y) {
    const int ym = reflect(y - 1, h);
    const int yp = reflect(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const double gx = 0.5 * (us(reflect(x + 1, w), y) - us(reflect(x - 1, w), y));
      const double gy = 0.5 * (us(x, yp) - us(x, ym));
      const double s2 = gx * gx + gy * gy;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (s2 == 0.0) {
        ta[i] = 1.0;
        tb[i] = 0.0;
        tc[i] = 1.0;
        continue;
      }
      const double g = diffusivity(s2, params.lambda);
      ta[i] = (g * gx * gx + gy * gy) / s2;
      tb[i] = (g - 1.0) * gx * gy / s2;
      tc[i] = (g * gy * gy + gx * gx) / s2;
    }
  }

  Image div(w, h);
  // Faces between (x, y) and (x + 1, y).
  for (int y = 0; y < h; ++y) {
    const int ym = reflect(y - 1, h);
    const int yp = reflect(y + 1, h);
    for (int x = 0; x + 1 < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double af = 0.5 * (ta[i] + ta[i + 1]);
      const double bf = 0.5 * (tb[i] + tb[i + 1]);
      const double ux = u(x + 1, y) - u(x, y);
      const double uy = 0.25 * (u(x, yp) + u(x + 1, yp) - u(x, ym) - u(x + 1, ym));
      const double flux = af * ux + bf * uy;
      div(x, y) += flux;
      div(x + 1, y) -= flux;
    }
  }
  // Faces between (x, y) and (x, y + 1).
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int xm = reflect(x - 1, w);
      const int xp = reflect(x + 1, w);
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const std::size_t j = i + static_cast<std::size_t>(w);
      const double bf = 0.5 * (tb[i] + tb[j]);
      const double cf = 0.5 * (tc[i] + tc[j]);
      const double uy = u(x, y + 1) - u(x, y);
      const double ux = 0.25 * (u(xp, y) + u(xp, y + 1) - u(xm, y) - u(xm, y + 1));
      const double flux = bf * ux + cf * uy;
      div(x, y) += flux;
      div(x, y + 1) -= flux;
    }
  }
  return div;
}

Image eed_denoise(const Image& f, const DiffusivityParams& params, double tau, int k_max,
                  const StepObserver& observer) {
  validate(params);
  if (!(tau > 0.0)) throw ContractError("tau must be positive");
  if (k_max < 0) throw ContractError("k_max must be >= 0");
  Image u = f;
  for (int k = 1; k <= k_max; ++k) {
    Image update = eed_operator(u, params);
    update *= tau;
    u += update;
    if (observer) observer(k, u);
  }
  return u;
}

}  // namespace mfsr
