#include "mfsr/registration.hpp"

#include "mfsr/error.hpp"
#include "mfsr/warp.hpp"

namespace mfsr {
namespace {

int checked_reference(std::span<const Image> frames, int reference_index) {
  if (frames.empty()) throw DimensionError("no frames to register");
  const int n = static_cast<int>(frames.size());
  const int ref = reference_index < 0 ? n - 1 : reference_index;
  if (ref >= n) throw DimensionError("reference index out of range");
  for (const Image& f : frames) require_same_shape(f, frames[0], "frame");
  return ref;
}

}  // namespace

std::vector<FlowField> estimate_frame_flows(std::span<const Image> frames, int reference_index,
                                            const FlowParams& params, const ScaleSpec& scale,
                                            FlowGrid grid) {
  const int ref = checked_reference(frames, reference_index);
  std::vector<Image> work;
  work.reserve(frames.size());
  for (const Image& f : frames) {
    work.push_back(grid == FlowGrid::kHighRes ? interpolate_to_hr(f, scale) : f);
  }
  std::vector<FlowField> flows;
  flows.reserve(frames.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (static_cast<int>(i) == ref) {
      flows.push_back({Image(work[i].width(), work[i].height()), Image(work[i].width(), work[i].height())});
    } else {
      flows.push_back(estimate_flow(work[i], work[ref], params));
    }
  }
  return flows;
}

Image registered_mean(std::span<const Image> frames, int reference_index,
                      const FlowParams& params) {
  const int ref = checked_reference(frames, reference_index);
  Image total = frames[ref];
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (static_cast<int>(i) == ref) continue;
    total += warp_forward(frames[i], estimate_flow(frames[ref], frames[i], params));
  }
  total *= 1.0 / static_cast<double>(frames.size());
  return total;
}

}  // namespace mfsr
