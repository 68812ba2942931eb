#include "mfsr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mfsr/error.hpp"
#include "mfsr/metrics.hpp"

namespace mfsr {
namespace {

std::size_t checked_area(int width, int height) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

std::string shape_string(const Image& img) {
  return std::to_string(img.width()) + "x" + std::to_string(img.height());
}

}  // namespace

Image::Image(int width, int height, double fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != checked_area(width, height)) {
    throw DimensionError("pixel buffer length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
}

bool Image::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Image& Image::operator+=(const Image& rhs) {
  require_same_shape(*this, rhs, "image addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Image& Image::operator-=(const Image& rhs) {
  require_same_shape(*this, rhs, "image subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Image& Image::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Image operator+(Image lhs, const Image& rhs) { return lhs += rhs; }
Image operator-(Image lhs, const Image& rhs) { return lhs -= rhs; }
Image operator*(double s, Image img) { return img *= s; }

double dot(const Image& a, const Image& b) {
  require_same_shape(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const Image& img) {
  double acc = 0.0;
  for (double v : img.pixels()) acc += v;
  return acc;
}

double mean(const Image& img) { return sum(img) / static_cast<double>(img.size()); }

double min_value(const Image& img) {
  return *std::min_element(img.pixels().begin(), img.pixels().end());
}

double max_value(const Image& img) {
  return *std::max_element(img.pixels().begin(), img.pixels().end());
}

FlowField::FlowField(Image u_component, Image v_component)
    : u(std::move(u_component)), v(std::move(v_component)) {
  require_same_shape(u, v, "flow components");
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + shape_string(a) + " vs " +
                         shape_string(b));
  }
}

void require_shape(const Image& img, int width, int height, const char* what) {
  if (img.width() != width || img.height() != height) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(width) + "x" +
                         std::to_string(height) + ", got " + shape_string(img));
  }
}

double mse(const Image& a, const Image& b) {
  require_same_shape(a, b, "mse");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

}  // namespace mfsr
