#pragma once

#include "mfsr/image.hpp"

namespace mfsr {

/// Mean squared error over all pixels. Throws DimensionError on shape mismatch.
double mse(const Image& a, const Image& b);

}  // namespace mfsr
