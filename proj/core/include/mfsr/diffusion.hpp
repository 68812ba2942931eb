#pragma once

#include <functional>

#include "mfsr/image.hpp"

namespace mfsr {

inline constexpr double kDiffusivityConstant = 3.31488;

/// g(x) = 1 - exp(-3.31488 / (x / lambda)^8), with g(0) = 1.
/// Nonincreasing on x >= 0 with range (0, 1]; negative x is treated as |x|.
double diffusivity(double x, double lambda) noexcept;

/// Contrast parameter and Gaussian pre-smoothing scale shared by EED and SD.
struct DiffusivityParams {
  double lambda = 1.0;
  double sigma = 0.0;
};

void validate(const DiffusivityParams& params);

/// Snapshot of an explicit evolution u^k.
struct DiffusionState {
  Image current;
  int step_count = 0;
  double tau = 0.0;
};

/// Called after every explicit step with the step index (1-based) and u^k.
using StepObserver = std::function<void(int step, const Image& u)>;

inline constexpr double kHomogeneousTauMax = 0.25;
inline constexpr double kEedDenoiseTau = 0.2;

/// A_HD u: 5-point Laplacian with reflecting (zero-flux) boundaries.
Image laplacian(const Image& u);

/// u + tau * laplacian(u). Throws ContractError unless 0 < tau <= 0.25.
Image homogeneous_step(const Image& u, double tau);
DiffusionState homogeneous_step(const DiffusionState& state);

/// A_EED u = div(D(grad u_sigma) grad u).
///
/// D has eigenvector grad u_sigma with eigenvalue g(|grad u_sigma|^2) and the
/// orthogonal eigenvalue 1. The divergence is taken in flux form on cell
/// faces: tensor entries are averaged onto the face, the normal derivative is
/// a one-cell difference and the tangential one a four-point average. Boundary
/// faces carry zero flux, so the mean grey value is conserved exactly.
Image eed_operator(const Image& u, const DiffusivityParams& params);

/// k_max explicit steps u <- u + tau * A_EED u, started from f.
Image eed_denoise(const Image& f, const DiffusivityParams& params, double tau, int k_max,
                  const StepObserver& observer = {});

}  // namespace mfsr
