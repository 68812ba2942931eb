#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mfsr {

/// SplitMix64 finaliser; derives independent sub-seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream));
}

/// Standard normal samples from std::mt19937_64 via the Box-Muller transform.
///
/// Both the engine and the transform are fully specified, so a given seed
/// yields the same sequence on every conforming platform. Uniforms are drawn
/// as (k + 1) / 2^53 with k the top 53 bits of an engine output, which lies in (0, 1].
class GaussianSource {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/box-muller-53";

  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double operator()();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mfsr
