#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "mfsr/degrade.hpp"
#include "mfsr/image.hpp"

namespace mfsr {

/// Plain-text description of a dataset directory.
///
///   mfsr-dataset 1
///   hr_size <w> <h>
///   lr_size <w> <h>
///   scale_factor <f>
///   blur_sigma <s>
///   noise_sigma <s>
///   seed <n>
///   deformation_amplitude <a>
///   deformation_smoothness <s>
///   num_frames <n>
///   reference <index>
///   ground_truth <path>          (optional)
///   frame <frame-path> <flo-path>  (one line per frame, in index order)
///
/// Relative paths are resolved against the manifest's directory. Lines that
/// start with '#' are comments.
struct Manifest {
  DatasetSpec spec;
  ScaleSpec scale;
  int reference_index = 0;
  std::optional<std::filesystem::path> ground_truth;
  std::vector<std::filesystem::path> frames;
  std::vector<std::filesystem::path> flows;
};

inline constexpr const char* kManifestFileName = "manifest.txt";

/// Writes frames as PGM, flows as .flo and the manifest into `dir`, which is
/// created if needed. Returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& dir, const Dataset& dataset,
                                    const DatasetSpec& spec, const Image* ground_truth = nullptr);

Manifest read_manifest(const std::filesystem::path& path);

struct LoadedDataset {
  Manifest manifest;
  std::vector<Image> frames;
  std::vector<FlowField> flows;
  std::optional<Image> ground_truth;
};

LoadedDataset load_dataset(const std::filesystem::path& manifest_path);

}  // namespace mfsr
