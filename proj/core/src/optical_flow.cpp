#include "mfsr/optical_flow.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mfsr/blur.hpp"
#include "mfsr/boundary.hpp"
#include "mfsr/error.hpp"
#include "mfsr/resample.hpp"
#include "mfsr/warp.hpp"

namespace mfsr {
namespace {

int level_extent(int size, double eta, int level) {
  return std::max(1, static_cast<int>(std::ceil(size * std::pow(eta, level) - 1e-9)));
}

// Fourth-order central differences with reflecting boundaries.
void derivatives(const Image& img, Image& dx, Image& dy) {
  const int w = img.width();
  const int h = img.height();
  dx = Image(w, h);
  dy = Image(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      dx(x, y) = (img(reflect(x - 2, w), y) - 8.0 * img(reflect(x - 1, w), y) +
                  8.0 * img(reflect(x + 1, w), y) - img(reflect(x + 2, w), y)) /
                 12.0;
      dy(x, y) = (img(x, reflect(y - 2, h)) - 8.0 * img(x, reflect(y - 1, h)) +
                  8.0 * img(x, reflect(y + 1, h)) - img(x, reflect(y + 2, h))) /
                 12.0;
    }
  }
}

// Psi'(s^2) for the smoothness term, from central differences of the total flow.
Image smoothness_weights(const Image& u, const Image& v, double eps) {
  const int w = u.width();
  const int h = u.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const int ym = reflect(y - 1, h);
    const int yp = reflect(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect(x - 1, w);
      const int xp = reflect(x + 1, w);
      const double ux = 0.5 * (u(xp, y) - u(xm, y));
      const double uy = 0.5 * (u(x, yp) - u(x, ym));
      const double vx = 0.5 * (v(xp, y) - v(xm, y));
      const double vy = 0.5 * (v(x, yp) - v(x, ym));
      out(x, y) = 0.5 / std::sqrt(ux * ux + uy * uy + vx * vx + vy * vy + eps * eps);
    }
  }
  return out;
}

void refine_level(const Image& ref, const Image& target, FlowField& flow, const FlowParams& p) {
  const int w = ref.width();
  const int h = ref.height();
  Image& u = flow.u;
  Image& v = flow.v;
  Image ix, iy;
  Image du(w, h), dv(w, h), data_weight(w, h);

  for (int outer = 0; outer < p.outer_iterations; ++outer) {
    const Image warped = warp_forward(target, flow);
    Image avg = ref + warped;
    avg *= 0.5;
    derivatives(avg, ix, iy);
    const Image iz = warped - ref;
    du = Image(w, h);
    dv = Image(w, h);

    for (int inner = 0; inner < p.inner_iterations; ++inner) {
      for (std::size_t i = 0; i < iz.size(); ++i) {
        const double r = iz[i] + ix[i] * du[i] + iy[i] * dv[i];
        data_weight[i] = 0.5 / std::sqrt(r * r + p.epsilon * p.epsilon);
      }
      const Image smooth = smoothness_weights(u + du, v + dv, p.epsilon);

      for (int sweep = 0; sweep < p.sor_iterations; ++sweep) {
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            const double sp = smooth(x, y);
            const double base_u = u(x, y);
            const double base_v = v(x, y);
            double weight_sum = 0.0;
            double acc_u = 0.0;
            double acc_v = 0.0;
            auto visit = [&](int qx, int qy) {
              const double s = 0.5 * (sp + smooth(qx, qy));
              weight_sum += s;
              acc_u += s * (u(qx, qy) + du(qx, qy) - base_u);
              acc_v += s * (v(qx, qy) + dv(qx, qy) - base_v);
            };
            if (x > 0) visit(x - 1, y);
            if (x + 1 < w) visit(x + 1, y);
            if (y > 0) visit(x, y - 1);
            if (y + 1 < h) visit(x, y + 1);

            const double pd = data_weight(x, y);
            const double gx = ix(x, y);
            const double gy = iy(x, y);
            const double gz = iz(x, y);
            const double a_reg = p.alpha * weight_sum;

            const double du_gs =
                (-pd * gx * (gz + gy * dv(x, y)) + p.alpha * acc_u) / (pd * gx * gx + a_reg);
            du(x, y) = (1.0 - p.omega) * du(x, y) + p.omega * du_gs;
            const double dv_gs =
                (-pd * gy * (gz + gx * du(x, y)) + p.alpha * acc_v) / (pd * gy * gy + a_reg);
            dv(x, y) = (1.0 - p.omega) * dv(x, y) + p.omega * dv_gs;
          }
        }
      }
    }
    u += du;
    v += dv;
  }
}

}  // namespace

void validate(const FlowParams& p) {
  if (!(p.eta > 0.0 && p.eta < 1.0)) throw ContractError("flow eta must lie in (0, 1)");
  if (!(p.omega > 0.0 && p.omega < 2.0)) throw ContractError("SOR omega must lie in (0, 2)");
  if (!(p.alpha > 0.0)) throw ContractError("flow alpha must be positive");
  if (!(p.epsilon > 0.0)) throw ContractError("flow epsilon must be positive");
  if (!(p.sigma >= 0.0)) throw ContractError("flow sigma must be >= 0");
  if (p.inner_iterations < 0 || p.outer_iterations < 0 || p.sor_iterations < 0) {
    throw ContractError("flow iteration counts must be >= 0");
  }
  if (p.min_size < 1) throw ContractError("minimum pyramid size must be >= 1");
}

std::optional<FlowPreset> find_flow_preset(std::string_view name) {
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const FlowPreset& preset : kFlowPresets) {
    if (preset.name == key) return preset;
  }
  return std::nullopt;
}

int pyramid_depth(int width, int height, double eta, int min_size) {
  if (!(eta > 0.0 && eta < 1.0)) throw ContractError("pyramid eta must lie in (0, 1)");
  const int smallest = std::min(width, height);
  if (smallest <= min_size) return 1;
  const double levels =
      std::log(static_cast<double>(min_size) / smallest) / std::log(eta);
  return std::max(1, static_cast<int>(std::ceil(levels - 1e-12)));
}

std::vector<std::pair<int, int>> pyramid_sizes(int width, int height, double eta, int min_size) {
  const int depth = pyramid_depth(width, height, eta, min_size);
  std::vector<std::pair<int, int>> sizes;
  sizes.reserve(depth);
  for (int k = 0; k < depth; ++k) {
    sizes.emplace_back(level_extent(width, eta, k), level_extent(height, eta, k));
  }
  return sizes;
}

std::vector<Image> build_pyramid(const Image& img, double eta, int min_size) {
  const auto sizes = pyramid_sizes(img.width(), img.height(), eta, min_size);
  std::vector<Image> levels;
  levels.reserve(sizes.size());
  levels.push_back(img);
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    const Image& prev = levels.back();
    const auto [w, h] = sizes[k];
    const double ratio = std::min(static_cast<double>(w) / prev.width(),
                                  static_cast<double>(h) / prev.height());
    const double sigma = ratio < 1.0 ? 0.6 * std::sqrt(1.0 / (ratio * ratio) - 1.0) : 0.0;
    levels.push_back(resample_bilinear(gaussian_smooth(prev, sigma), w, h,
                                       static_cast<double>(prev.width()) / w,
                                       static_cast<double>(prev.height()) / h));
  }
  return levels;
}

FlowField estimate_flow(const Image& reference, const Image& target, const FlowParams& params) {
  validate(params);
  require_same_shape(reference, target, "estimate_flow");
  const auto ref_pyr =
      build_pyramid(gaussian_smooth(reference, params.sigma), params.eta, params.min_size);
  const auto tgt_pyr =
      build_pyramid(gaussian_smooth(target, params.sigma), params.eta, params.min_size);

  FlowField flow;
  for (std::size_t k = ref_pyr.size(); k-- > 0;) {
    const Image& ref = ref_pyr[k];
    const int w = ref.width();
    const int h = ref.height();
    if (flow.u.empty()) {
      flow = FlowField(w, h);
    } else {
      const int cw = flow.width();
      const int ch = flow.height();
      const double sx = static_cast<double>(cw) / w;
      const double sy = static_cast<double>(ch) / h;
      flow = FlowField((1.0 / sx) * resample_bilinear(flow.u, w, h, sx, sy),
                       (1.0 / sy) * resample_bilinear(flow.v, w, h, sx, sy));
    }
    refine_level(ref, tgt_pyr[k], flow, params);
  }
  return flow;
}

}  // namespace mfsr
