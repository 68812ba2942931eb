#pragma once

#include "mfsr/image.hpp"
#include "mfsr/resample.hpp"

namespace mfsr {

/// W: output(x) = bilinear sample of img at x + flow(x). Taps outside the
/// image are reflected, so the operator preserves constants.
Image warp_forward(const Image& img, const FlowField& flow);

/// W^T: scatters every output sample's bilinear weights back to its source
/// taps. Exact transpose of warp_forward for the same flow.
Image warp_adjoint(const Image& img, const FlowField& flow);

/// Carries an HR flow down to the LR grid: bilinear downsampling of both
/// components followed by division by the scale factor.
FlowField flow_to_lr(const FlowField& hr_flow, const ScaleSpec& scale);

/// Carries an LR flow up to the HR grid: bilinear interpolation of both
/// components followed by multiplication by the scale factor.
FlowField flow_to_hr(const FlowField& lr_flow, const ScaleSpec& scale);

}  // namespace mfsr
