#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfsr/blur.hpp"
#include "mfsr/image.hpp"
#include "mfsr/resample.hpp"

namespace mfsr {

/// Operator order of the observational model. With u the HR unknown, D the
/// downsampler, B the blur and W the per-frame warp:
///
///   M1  D B W u     M4  W D B u
///   M2  D W B u     M5  B W D u
///   M3  B D W u     M6  W B D u
///   M2_1  B u  against the precomputed right-hand side W^T D^T f
///
/// Operators to the left of D act on the LR grid.
enum class ObservationalModel { kM1, kM2, kM3, kM4, kM5, kM6, kM2_1 };

inline constexpr ObservationalModel kAllModels[] = {
    ObservationalModel::kM1, ObservationalModel::kM2, ObservationalModel::kM3,
    ObservationalModel::kM4, ObservationalModel::kM5, ObservationalModel::kM6,
    ObservationalModel::kM2_1};

std::string_view to_string(ObservationalModel model) noexcept;

/// Accepts "M1".."M6", "M2.1", "M2_1", case-insensitively, with or without the "M".
std::optional<ObservationalModel> parse_model(std::string_view text);

/// True when W acts on the LR grid (M4, M5, M6) and so expects an LR flow.
bool warps_on_lr(ObservationalModel model) noexcept;

/// Converts a flow given on either grid to the grid the model's warp needs.
/// A flow already on the required grid is returned unchanged.
FlowField flow_for_model(ObservationalModel model, const FlowField& flow, const ScaleSpec& scale);

/// Noiseless prediction of one frame from the HR image `u`.
/// The result has LR dimensions, except for M2_1 which stays at HR.
Image apply_model(ObservationalModel model, const Image& u, const FlowField& flow,
                  const BlurSpec& blur, const ScaleSpec& scale);

/// Transposed operator chain of apply_model, mapping a residual back to HR.
Image apply_model_adjoint(ObservationalModel model, const Image& residual, const FlowField& flow,
                          const BlurSpec& blur, const ScaleSpec& scale);

/// Right-hand sides of M2_1: r_i = W_i^T (s D^T) f_i with s = HR area / LR area, so
/// that r_i keeps the grey level of f_i. Computed once; flows are on the HR grid.
std::vector<Image> precompute_m21_rhs(std::span<const Image> frames,
                                      std::span<const FlowField> flows, const ScaleSpec& scale);

}  // namespace mfsr
