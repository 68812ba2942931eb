#pragma once

#include <span>
#include <vector>

#include "mfsr/image.hpp"
#include "mfsr/optical_flow.hpp"
#include "mfsr/resample.hpp"

namespace mfsr {

enum class FlowGrid {
  kLowRes,   ///< estimate between the LR frames
  kHighRes,  ///< estimate between bilinear HR interpolations of the frames
};

/// Flow for every frame in the convention the solver expects: flow i lets
/// warp_forward(reference, flow) predict frame i. The reference frame gets
/// the zero field. Flows come back on the grid they were estimated on.
std::vector<FlowField> estimate_frame_flows(std::span<const Image> frames, int reference_index,
                                            const FlowParams& params, const ScaleSpec& scale,
                                            FlowGrid grid = FlowGrid::kLowRes);

/// Pixelwise mean of all frames after motion compensation onto the reference
/// frame, each frame aligned with its own estimated flow. LR dimensions.
Image registered_mean(std::span<const Image> frames, int reference_index,
                      const FlowParams& params);

}  // namespace mfsr
