#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mfsr/image.hpp"

namespace mfsr::test {

inline Image random_image(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Image img(w, h);
  for (double& v : img.pixels()) v = dist(rng);
  return img;
}

inline FlowField random_flow(int w, int h, std::uint64_t seed, double amplitude) {
  return {random_image(w, h, seed, -amplitude, amplitude),
          random_image(w, h, seed ^ 0x5bd1e995u, -amplitude, amplitude)};
}

/// Smooth synthetic scene: a few overlapping sinusoids, range roughly [30, 225].
inline Image smooth_scene(int w, int h, double phase = 0.0) {
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img(x, y) = 128.0 + 50.0 * std::sin(0.21 * x + phase) * std::cos(0.17 * y) +
                  40.0 * std::sin(0.05 * (x + 2 * y) + 0.5 * phase);
    }
  }
  return img;
}

/// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("mfsr_test_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline double relative_adjoint_gap(double lhs, double rhs, double norm_product) {
  return std::abs(lhs - rhs) / norm_product;
}

}  // namespace mfsr::test
