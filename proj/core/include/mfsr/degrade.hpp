#pragma once

#include <cstdint>
#include <vector>

#include "mfsr/image.hpp"
#include "mfsr/resample.hpp"

namespace mfsr {

/// Synthetic acquisition: HR scene -> random smooth warp -> Gaussian blur ->
/// bilinear downsampling -> clipped AWGN.
struct DatasetSpec {
  int num_frames = 30;
  double blur_sigma = 1.0;
  double scale_factor = 2.0;
  double noise_sigma = 40.0;
  std::uint64_t seed = 0;
  double deformation_amplitude = 3.0;   ///< max displacement norm, HR pixels
  double deformation_smoothness = 20.0; ///< Gaussian sigma applied to the raw displacements
};

void validate(const DatasetSpec& spec);

struct Dataset {
  ScaleSpec scale;
  std::vector<Image> frames;        ///< noisy LR frames
  std::vector<Image> clean_frames;  ///< the same frames before noise
  std::vector<FlowField> flows;     ///< HR-grid ground-truth flows, frame i <-> flow i
  int reference_index = 0;          ///< always the last frame
};

/// Uniform [-amplitude, amplitude] displacements per pixel and component,
/// Gaussian-smoothed by `smoothness`, then rescaled so the largest vector
/// norm equals `amplitude`. A field that smooths to exactly zero stays zero.
FlowField random_deformation(int width, int height, double amplitude, double smoothness,
                             std::uint64_t seed);

/// Frame i = noise(D(B(W_i hr))) with W_i = warp_forward along flows[i].
/// The last frame is the reference and has the zero flow.
Dataset generate_dataset(const Image& hr, const DatasetSpec& spec);

}  // namespace mfsr
