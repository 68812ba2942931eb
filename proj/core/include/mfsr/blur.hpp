#pragma once

#include <vector>

#include "mfsr/image.hpp"

namespace mfsr {

/// Isotropic Gaussian point-spread function.
struct BlurSpec {
  /// Standard deviation in pixels of the grid the blur acts on. Zero is the identity.
  double sigma = 0.0;

  static constexpr double kTruncation = 3.0;
};

/// Symmetric 1-D Gaussian taps for offsets -r..r with r = ceil(3 sigma),
/// renormalised to sum to one. sigma == 0 gives the single tap {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian convolution with reflecting boundaries.
///
/// With half-sample reflection the convolution matrix is symmetric, so this
/// function is also its own adjoint.
Image blur(const Image& img, const BlurSpec& spec);

inline Image gaussian_smooth(const Image& img, double sigma) { return blur(img, BlurSpec{sigma}); }

}  // namespace mfsr
