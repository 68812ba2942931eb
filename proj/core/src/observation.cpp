#include "mfsr/observation.hpp"

#include <cctype>
#include <string>

#include "mfsr/error.hpp"
#include "mfsr/warp.hpp"

namespace mfsr {
namespace {

using M = ObservationalModel;

void check_flow_grid(M model, const FlowField& flow, const ScaleSpec& scale) {
  const bool lr = warps_on_lr(model);
  const int w = lr ? scale.lr_width : scale.hr_width;
  const int h = lr ? scale.lr_height : scale.hr_height;
  if (flow.width() != w || flow.height() != h) {
    throw DimensionError(std::string(to_string(model)) + " needs a " + (lr ? "LR" : "HR") +
                         " flow of " + std::to_string(w) + "x" + std::to_string(h) + ", got " +
                         std::to_string(flow.width()) + "x" + std::to_string(flow.height()));
  }
}

}  // namespace

std::string_view to_string(ObservationalModel model) noexcept {
  switch (model) {
    case M::kM1: return "M1";
    case M::kM2: return "M2";
    case M::kM3: return "M3";
    case M::kM4: return "M4";
    case M::kM5: return "M5";
    case M::kM6: return "M6";
    case M::kM2_1: return "M2.1";
  }
  return "?";
}

std::optional<ObservationalModel> parse_model(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (!s.empty() && s.front() == 'M') s.erase(0, 1);
  if (s == "1") return M::kM1;
  if (s == "2") return M::kM2;
  if (s == "3") return M::kM3;
  if (s == "4") return M::kM4;
  if (s == "5") return M::kM5;
  if (s == "6") return M::kM6;
  if (s == "2.1" || s == "2_1" || s == "21") return M::kM2_1;
  return std::nullopt;
}

bool warps_on_lr(ObservationalModel model) noexcept {
  return model == M::kM4 || model == M::kM5 || model == M::kM6;
}

FlowField flow_for_model(ObservationalModel model, const FlowField& flow, const ScaleSpec& scale) {
  const bool on_hr = flow.width() == scale.hr_width && flow.height() == scale.hr_height;
  const bool on_lr = flow.width() == scale.lr_width && flow.height() == scale.lr_height;
  if (warps_on_lr(model)) {
    if (on_lr) return flow;
    if (on_hr) return flow_to_lr(flow, scale);
  } else {
    if (on_hr) return flow;
    if (on_lr) return flow_to_hr(flow, scale);
  }
  throw DimensionError("flow of " + std::to_string(flow.width()) + "x" +
                       std::to_string(flow.height()) + " matches neither the HR nor the LR grid");
}

Image apply_model(ObservationalModel model, const Image& u, const FlowField& flow,
                  const BlurSpec& b, const ScaleSpec& scale) {
  require_shape(u, scale.hr_width, scale.hr_height, "apply_model input");
  if (model == M::kM2_1) return blur(u, b);
  check_flow_grid(model, flow, scale);
  switch (model) {
    case M::kM1: return downsample(blur(warp_forward(u, flow), b), scale);
    case M::kM2: return downsample(warp_forward(blur(u, b), flow), scale);
    case M::kM3: return blur(downsample(warp_forward(u, flow), scale), b);
    case M::kM4: return warp_forward(downsample(blur(u, b), scale), flow);
    case M::kM5: return blur(warp_forward(downsample(u, scale), flow), b);
    case M::kM6: return warp_forward(blur(downsample(u, scale), b), flow);
    case M::kM2_1: break;
  }
  return blur(u, b);
}

Image apply_model_adjoint(ObservationalModel model, const Image& r, const FlowField& flow,
                          const BlurSpec& b, const ScaleSpec& scale) {
  if (model == M::kM2_1) {
    require_shape(r, scale.hr_width, scale.hr_height, "M2.1 residual");
    return blur(r, b);
  }
  require_shape(r, scale.lr_width, scale.lr_height, "apply_model_adjoint residual");
  check_flow_grid(model, flow, scale);
  switch (model) {
    case M::kM1: return warp_adjoint(blur(upsample(r, scale), b), flow);
    case M::kM2: return blur(warp_adjoint(upsample(r, scale), flow), b);
    case M::kM3: return warp_adjoint(upsample(blur(r, b), scale), flow);
    case M::kM4: return blur(upsample(warp_adjoint(r, flow), scale), b);
    case M::kM5: return upsample(warp_adjoint(blur(r, b), flow), scale);
    case M::kM6: return upsample(blur(warp_adjoint(r, flow), b), scale);
    case M::kM2_1: break;
  }
  return blur(r, b);
}

std::vector<Image> precompute_m21_rhs(std::span<const Image> frames,
                                      std::span<const FlowField> flows, const ScaleSpec& scale) {
  if (frames.size() != flows.size()) {
    throw DimensionError("precompute_m21_rhs: " + std::to_string(frames.size()) + " frames but " +
                         std::to_string(flows.size()) + " flows");
  }
  // D^T spreads each LR value with weights summing to about (lr area / hr area);
  // rescaling by the area ratio keeps r_i at the grey level of f_i.
  const double gain = static_cast<double>(scale.hr_width) * scale.hr_height /
                      (static_cast<double>(scale.lr_width) * scale.lr_height);
  std::vector<Image> rhs;
  rhs.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    check_flow_grid(M::kM1, flows[i], scale);
    Image up = upsample(frames[i], scale);
    up *= gain;
    rhs.push_back(warp_adjoint(up, flows[i]));
  }
  return rhs;
}

}  // namespace mfsr
