#pragma once

#include "mfsr/image.hpp"

namespace mfsr {

/// Relation between the high-resolution grid and the low-resolution grid.
struct ScaleSpec {
  int hr_width = 0;
  int hr_height = 0;
  int lr_width = 0;
  int lr_height = 0;
  /// HR pixels per LR pixel along each axis, >= 1.
  double factor = 1.0;

  /// LR dimensions are round(hr / factor).
  static ScaleSpec from_hr(int hr_width, int hr_height, double factor);
};

/// Bilinear resampling with pixel-centre alignment: output pixel x samples the
/// input at (x + 0.5) * step - 0.5 along each axis. Taps that fall outside the
/// input are reflected. Rows of the implied matrix sum to one.
Image resample_bilinear(const Image& img, int out_width, int out_height, double step_x,
                        double step_y);

/// Exact transpose of resample_bilinear: scatters each input sample back onto
/// an in_width x in_height grid with the same weights.
Image resample_bilinear_adjoint(const Image& img, int in_width, int in_height, double step_x,
                                double step_y);

/// D: HR -> LR. Samples HR coordinate (i + 0.5) * factor - 0.5.
Image downsample(const Image& hr, const ScaleSpec& scale);

/// D^T: LR -> HR, the exact matrix transpose of downsample.
Image upsample(const Image& lr, const ScaleSpec& scale);

/// Bilinear interpolation LR -> HR (not the transpose of D); used for
/// initialisation and for carrying flows up to the HR grid.
Image interpolate_to_hr(const Image& lr, const ScaleSpec& scale);

}  // namespace mfsr
