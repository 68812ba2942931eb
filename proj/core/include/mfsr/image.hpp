#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mfsr {

/// Dense 2-D scalar grid, row-major with a top-left origin.
///
/// Intensities are doubles with a nominal range of [0,255]. Nothing clamps
/// them except 8-bit export, so iterative schemes may step outside that range.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);
  Image(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(int x, int y) { return data_[index(x, y)]; }
  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> pixels() noexcept { return data_; }
  std::span<const double> pixels() const noexcept { return data_; }

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool all_finite() const noexcept;

  Image& operator+=(const Image& rhs);
  Image& operator-=(const Image& rhs);
  Image& operator*=(double s);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

Image operator+(Image lhs, const Image& rhs);
Image operator-(Image lhs, const Image& rhs);
Image operator*(double s, Image img);

/// Euclidean inner product of two same-shape images.
double dot(const Image& a, const Image& b);
double sum(const Image& img);
double mean(const Image& img);
double min_value(const Image& img);
double max_value(const Image& img);

/// Per-pixel displacement field. Components are in pixels; `u` is horizontal
/// and `v` vertical.
struct FlowField {
  Image u;
  Image v;

  FlowField() = default;
  FlowField(int width, int height) : u(width, height), v(width, height) {}
  FlowField(Image u_component, Image v_component);

  int width() const noexcept { return u.width(); }
  int height() const noexcept { return u.height(); }
  bool all_finite() const noexcept { return u.all_finite() && v.all_finite(); }

  friend bool operator==(const FlowField&, const FlowField&) = default;
};

/// Throws DimensionError unless both images have the same width and height.
void require_same_shape(const Image& a, const Image& b, const char* what);
void require_shape(const Image& img, int width, int height, const char* what);

}  // namespace mfsr
