#include "mfsr/warp.hpp"

#include <cmath>

#include "mfsr/boundary.hpp"

namespace mfsr {
namespace {

struct BilinearTaps {
  int x0, x1, y0, y1;
  double wx, wy;
};

BilinearTaps taps_at(double px, double py, int w, int h) {
  const double fx = std::floor(px);
  const double fy = std::floor(py);
  const int ix = static_cast<int>(fx);
  const int iy = static_cast<int>(fy);
  return {reflect(ix, w), reflect(ix + 1, w), reflect(iy, h), reflect(iy + 1, h), px - fx,
          py - fy};
}

void check_flow(const Image& img, const FlowField& flow, const char* what) {
  require_same_shape(img, flow.u, what);
  require_same_shape(img, flow.v, what);
}

}  // namespace

Image warp_forward(const Image& img, const FlowField& flow) {
  check_flow(img, flow, "warp_forward");
  const int w = img.width();
  const int h = img.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto t = taps_at(x + flow.u(x, y), y + flow.v(x, y), w, h);
      out(x, y) = (1.0 - t.wy) * ((1.0 - t.wx) * img(t.x0, t.y0) + t.wx * img(t.x1, t.y0)) +
                  t.wy * ((1.0 - t.wx) * img(t.x0, t.y1) + t.wx * img(t.x1, t.y1));
    }
  }
  return out;
}

Image warp_adjoint(const Image& img, const FlowField& flow) {
  check_flow(img, flow, "warp_adjoint");
  const int w = img.width();
  const int h = img.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto t = taps_at(x + flow.u(x, y), y + flow.v(x, y), w, h);
      const double r = img(x, y);
      out(t.x0, t.y0) += (1.0 - t.wy) * (1.0 - t.wx) * r;
      out(t.x1, t.y0) += (1.0 - t.wy) * t.wx * r;
      out(t.x0, t.y1) += t.wy * (1.0 - t.wx) * r;
      out(t.x1, t.y1) += t.wy * t.wx * r;
    }
  }
  return out;
}

FlowField flow_to_lr(const FlowField& hr_flow, const ScaleSpec& scale) {
  return FlowField((1.0 / scale.factor) * downsample(hr_flow.u, scale),
                   (1.0 / scale.factor) * downsample(hr_flow.v, scale));
}

FlowField flow_to_hr(const FlowField& lr_flow, const ScaleSpec& scale) {
  return FlowField(scale.factor * interpolate_to_hr(lr_flow.u, scale),
                   scale.factor * interpolate_to_hr(lr_flow.v, scale));
}

}  // namespace mfsr
