#pragma once

#include <filesystem>

#include "mfsr/image.hpp"

namespace mfsr {

enum class ImageFormat { kPgm8, kPfm };

/// Reads an 8-bit binary PGM (P5, maxval 255) or a single-channel PFM ("Pf").
///
/// PFM rows are read top-to-bottom, the order write_image produces. A negative
/// scale marks little-endian data and a positive one big-endian.
Image read_image(const std::filesystem::path& path);

/// PGM export clamps to [0,255] and rounds half-up. PFM export stores float32.
void write_image(const Image& img, const std::filesystem::path& path, ImageFormat format);

/// Picks the format from the extension: ".pfm" gives PFM, anything else PGM.
ImageFormat format_for_path(const std::filesystem::path& path);

/// Quantises one intensity exactly the way PGM export does.
unsigned char quantise_8bit(double value) noexcept;

/// Middlebury .flo: float 202021.25, int32 width, int32 height, then
/// interleaved (u,v) float32 pairs, all little-endian.
FlowField read_flow(const std::filesystem::path& path);
void write_flow(const FlowField& flow, const std::filesystem::path& path);

inline constexpr float kFloMagic = 202021.25f;

}  // namespace mfsr
