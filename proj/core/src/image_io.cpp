#include "mfsr/image_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "mfsr/error.hpp"

namespace mfsr {
namespace {

using Kind = FormatError::Kind;

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

void spill(const std::filesystem::path& path, const std::string& header,
           const void* payload, std::size_t payload_bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(static_cast<const char*>(payload), static_cast<std::streamsize>(payload_bytes));
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

// Netpbm-style header tokenizer: whitespace separated, '#' starts a comment.
class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  std::string token() {
    skip_space_and_comments();
    std::string tok;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      tok.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (tok.empty()) throw FormatError(Kind::kMalformedHeader, name_ + ": truncated header");
    return tok;
  }

  int positive_int() {
    const std::string tok = token();
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || value < 1 || value > (1L << 24)) {
      throw FormatError(Kind::kMalformedHeader, name_ + ": bad header field '" + tok + "'");
    }
    return static_cast<int>(value);
  }

  double real() {
    const std::string tok = token();
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(value) || value == 0.0) {
      throw FormatError(Kind::kMalformedHeader, name_ + ": bad scale field '" + tok + "'");
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the payload.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError(Kind::kMalformedHeader, name_ + ": missing separator before payload");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

std::uint32_t load_u32(const unsigned char* p, bool little_endian) {
  if (little_endian) {
    return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
           std::uint32_t{p[3]} << 24;
  }
  return std::uint32_t{p[3]} | std::uint32_t{p[2]} << 8 | std::uint32_t{p[1]} << 16 |
         std::uint32_t{p[0]} << 24;
}

void store_u32_le(unsigned char* p, std::uint32_t v) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
  p[2] = static_cast<unsigned char>(v >> 16);
  p[3] = static_cast<unsigned char>(v >> 24);
}

float load_f32(const unsigned char* p, bool little_endian) {
  return std::bit_cast<float>(load_u32(p, little_endian));
}

void store_f32_le(unsigned char* p, float v) { store_u32_le(p, std::bit_cast<std::uint32_t>(v)); }

Image decode_pgm(const std::vector<unsigned char>& bytes, HeaderReader& header,
                 const std::string& name) {
  const int width = header.positive_int();
  const int height = header.positive_int();
  const int maxval = header.positive_int();
  if (maxval != 255) {
    throw FormatError(Kind::kUnsupportedMaxval,
                      name + ": unsupported maxval " + std::to_string(maxval));
  }
  const std::size_t offset = header.payload_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + count) {
    throw FormatError(Kind::kTruncatedPayload, name + ": truncated pixel payload");
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) data[i] = bytes[offset + i];
  return Image(width, height, std::move(data));
}

Image decode_pfm(const std::vector<unsigned char>& bytes, HeaderReader& header,
                 const std::string& name) {
  const int width = header.positive_int();
  const int height = header.positive_int();
  const double scale = header.real();
  const bool little_endian = scale < 0.0;
  const std::size_t offset = header.payload_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + 4 * count) {
    throw FormatError(Kind::kTruncatedPayload, name + ": truncated float payload");
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float v = load_f32(&bytes[offset + 4 * i], little_endian);
    if (!std::isfinite(v)) throw FormatError(Kind::kNonFinite, name + ": non-finite sample");
    data[i] = v;
  }
  return Image(width, height, std::move(data));
}

}  // namespace

unsigned char quantise_8bit(double value) noexcept {
  if (!(value > 0.0)) return 0;
  if (value >= 255.0) return 255;
  return static_cast<unsigned char>(std::floor(value + 0.5));
}

ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".pfm" ? ImageFormat::kPfm : ImageFormat::kPgm8;
}

Image read_image(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = slurp(path);
  const std::string name = path.string();
  HeaderReader header(bytes, name);
  const std::string magic = header.token();
  if (magic == "P5") return decode_pgm(bytes, header, name);
  if (magic == "Pf") return decode_pfm(bytes, header, name);
  throw FormatError(Kind::kUnsupportedFormat,
                    name + ": unsupported format '" + magic + "' (grey-scale P5 or Pf only)");
}

void write_image(const Image& img, const std::filesystem::path& path, ImageFormat format) {
  const std::string dims = std::to_string(img.width()) + " " + std::to_string(img.height());
  if (format == ImageFormat::kPgm8) {
    std::vector<unsigned char> payload(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) payload[i] = quantise_8bit(img[i]);
    spill(path, "P5\n" + dims + "\n255\n", payload.data(), payload.size());
  } else {
    std::vector<unsigned char> payload(4 * img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      store_f32_le(&payload[4 * i], static_cast<float>(img[i]));
    }
    spill(path, "Pf\n" + dims + "\n-1.0\n", payload.data(), payload.size());
  }
}

FlowField read_flow(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = slurp(path);
  const std::string name = path.string();
  if (bytes.size() < 12) throw FormatError(Kind::kTruncatedPayload, name + ": short .flo header");
  if (load_f32(bytes.data(), true) != kFloMagic) {
    throw FormatError(Kind::kBadMagic, name + ": bad .flo magic number");
  }
  const auto width = static_cast<std::int32_t>(load_u32(bytes.data() + 4, true));
  const auto height = static_cast<std::int32_t>(load_u32(bytes.data() + 8, true));
  if (width < 1 || height < 1 || width > (1 << 24) || height > (1 << 24)) {
    throw FormatError(Kind::kSizeMismatch, name + ": invalid .flo dimensions");
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() != 12 + 8 * count) {
    throw FormatError(Kind::kSizeMismatch,
                      name + ": payload size does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  FlowField flow(width, height);
  for (std::size_t i = 0; i < count; ++i) {
    const float u = load_f32(&bytes[12 + 8 * i], true);
    const float v = load_f32(&bytes[16 + 8 * i], true);
    if (!std::isfinite(u) || !std::isfinite(v)) {
      throw FormatError(Kind::kNonFinite, name + ": non-finite flow sample");
    }
    flow.u[i] = u;
    flow.v[i] = v;
  }
  return flow;
}

void write_flow(const FlowField& flow, const std::filesystem::path& path) {
  std::vector<unsigned char> payload(8 * flow.u.size());
  for (std::size_t i = 0; i < flow.u.size(); ++i) {
    store_f32_le(&payload[8 * i], static_cast<float>(flow.u[i]));
    store_f32_le(&payload[8 * i + 4], static_cast<float>(flow.v[i]));
  }
  std::string header(12, '\0');
  auto* h = reinterpret_cast<unsigned char*>(header.data());
  store_f32_le(h, kFloMagic);
  store_u32_le(h + 4, static_cast<std::uint32_t>(flow.width()));
  store_u32_le(h + 8, static_cast<std::uint32_t>(flow.height()));
  spill(path, header, payload.data(), payload.size());
}

}  // namespace mfsr
