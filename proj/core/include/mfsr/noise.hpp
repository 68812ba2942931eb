#pragma once

#include <cstdint>

#include "mfsr/image.hpp"

namespace mfsr {

/// Adds i.i.d. N(0, sigma_noise^2) noise per pixel and clamps to [0,255].
/// Deterministic for a fixed seed; sigma_noise == 0 returns the input.
Image add_clipped_awgn(const Image& img, double sigma_noise, std::uint64_t seed);

}  // namespace mfsr
