#include "mfsr/resample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mfsr/boundary.hpp"
#include "mfsr/error.hpp"

namespace mfsr {
namespace {

struct Tap {
  int lo;
  int hi;
  double w_lo;
  double w_hi;
};

std::vector<Tap> axis_taps(int out_size, int in_size, double step) {
  std::vector<Tap> taps(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double pos = (i + 0.5) * step - 0.5;
    const double base = std::floor(pos);
    const double t = pos - base;
    const int b = static_cast<int>(base);
    taps[i] = {reflect(b, in_size), reflect(b + 1, in_size), 1.0 - t, t};
  }
  return taps;
}

void check_step(double step_x, double step_y) {
  if (!(step_x > 0.0) || !(step_y > 0.0) || !std::isfinite(step_x) || !std::isfinite(step_y)) {
    throw ContractError("resampling step must be positive and finite");
  }
}

}  // namespace

ScaleSpec ScaleSpec::from_hr(int hr_width, int hr_height, double factor) {
  if (!(factor >= 1.0) || !std::isfinite(factor)) {
    throw ContractError("scale factor must be >= 1, got " + std::to_string(factor));
  }
  if (hr_width < 1 || hr_height < 1) throw DimensionError("HR dimensions must be positive");
  ScaleSpec s;
  s.hr_width = hr_width;
  s.hr_height = hr_height;
  s.lr_width = std::max(1, static_cast<int>(std::lround(hr_width / factor)));
  s.lr_height = std::max(1, static_cast<int>(std::lround(hr_height / factor)));
  s.factor = factor;
  return s;
}

Image resample_bilinear(const Image& img, int out_width, int out_height, double step_x,
                        double step_y) {
  check_step(step_x, step_y);
  const auto tx = axis_taps(out_width, img.width(), step_x);
  const auto ty = axis_taps(out_height, img.height(), step_y);

  Image rows(out_width, img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < out_width; ++x) {
      rows(x, y) = tx[x].w_lo * img(tx[x].lo, y) + tx[x].w_hi * img(tx[x].hi, y);
    }
  }
  Image out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      out(x, y) = ty[y].w_lo * rows(x, ty[y].lo) + ty[y].w_hi * rows(x, ty[y].hi);
    }
  }
  return out;
}

Image resample_bilinear_adjoint(const Image& img, int in_width, int in_height, double step_x,
                                double step_y) {
  check_step(step_x, step_y);
  const auto tx = axis_taps(img.width(), in_width, step_x);
  const auto ty = axis_taps(img.height(), in_height, step_y);

  Image rows(img.width(), in_height);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      rows(x, ty[y].lo) += ty[y].w_lo * img(x, y);
      rows(x, ty[y].hi) += ty[y].w_hi * img(x, y);
    }
  }
  Image out(in_width, in_height);
  for (int y = 0; y < in_height; ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out(tx[x].lo, y) += tx[x].w_lo * rows(x, y);
      out(tx[x].hi, y) += tx[x].w_hi * rows(x, y);
    }
  }
  return out;
}

Image downsample(const Image& hr, const ScaleSpec& scale) {
  require_shape(hr, scale.hr_width, scale.hr_height, "downsample input");
  if (scale.factor == 1.0 && scale.lr_width == scale.hr_width && scale.lr_height == scale.hr_height) {
    return hr;
  }
  return resample_bilinear(hr, scale.lr_width, scale.lr_height, scale.factor, scale.factor);
}

Image upsample(const Image& lr, const ScaleSpec& scale) {
  require_shape(lr, scale.lr_width, scale.lr_height, "upsample input");
  if (scale.factor == 1.0 && scale.lr_width == scale.hr_width && scale.lr_height == scale.hr_height) {
    return lr;
  }
  return resample_bilinear_adjoint(lr, scale.hr_width, scale.hr_height, scale.factor,
                                   scale.factor);
}

Image interpolate_to_hr(const Image& lr, const ScaleSpec& scale) {
  require_shape(lr, scale.lr_width, scale.lr_height, "interpolation input");
  if (scale.factor == 1.0 && scale.lr_width == scale.hr_width && scale.lr_height == scale.hr_height) {
    return lr;
  }
  return resample_bilinear(lr, scale.hr_width, scale.hr_height, 1.0 / scale.factor,
                           1.0 / scale.factor);
}

}  // namespace mfsr
