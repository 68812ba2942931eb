#include "mfsr/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mfsr/error.hpp"
#include "mfsr/image_io.hpp"

namespace mfsr {
namespace {

using Kind = FormatError::Kind;

[[noreturn]] void malformed(const std::filesystem::path& path, int line, const std::string& why) {
  throw FormatError(Kind::kMalformedHeader,
                    path.string() + ":" + std::to_string(line) + ": " + why);
}

std::string numbered(const char* stem, int i, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d%s", stem, i, ext);
  return buf;
}

}  // namespace

std::filesystem::path write_dataset(const std::filesystem::path& dir, const Dataset& dataset,
                                    const DatasetSpec& spec, const Image* ground_truth) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::ostringstream out;
  out.precision(17);
  out << "mfsr-dataset 1\n"
      << "hr_size " << dataset.scale.hr_width << ' ' << dataset.scale.hr_height << '\n'
      << "lr_size " << dataset.scale.lr_width << ' ' << dataset.scale.lr_height << '\n'
      << "scale_factor " << dataset.scale.factor << '\n'
      << "blur_sigma " << spec.blur_sigma << '\n'
      << "noise_sigma " << spec.noise_sigma << '\n'
      << "seed " << spec.seed << '\n'
      << "deformation_amplitude " << spec.deformation_amplitude << '\n'
      << "deformation_smoothness " << spec.deformation_smoothness << '\n'
      << "num_frames " << dataset.frames.size() << '\n'
      << "reference " << dataset.reference_index << '\n';
  if (ground_truth != nullptr) {
    write_image(*ground_truth, dir / "ground_truth.pgm", ImageFormat::kPgm8);
    out << "ground_truth ground_truth.pgm\n";
  }
  for (std::size_t i = 0; i < dataset.frames.size(); ++i) {
    const std::string frame = numbered("frame", static_cast<int>(i), ".pgm");
    const std::string flow = numbered("flow", static_cast<int>(i), ".flo");
    write_image(dataset.frames[i], dir / frame, ImageFormat::kPgm8);
    write_flow(dataset.flows[i], dir / flow);
    out << "frame " << frame << ' ' << flow << '\n';
  }

  const auto path = dir / kManifestFileName;
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << out.str();
  if (!file) throw IoError("write failure on " + path.string());
  return path;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  const auto base = path.parent_path();

  Manifest m;
  bool have_header = false;
  bool have_hr = false;
  int declared_frames = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    bool ok = true;
    if (key == "mfsr-dataset") {
      int version = 0;
      ok = static_cast<bool>(fields >> version) && version == 1;
      have_header = ok;
    } else if (key == "hr_size") {
      ok = static_cast<bool>(fields >> m.scale.hr_width >> m.scale.hr_height);
      have_hr = ok;
    } else if (key == "lr_size") {
      ok = static_cast<bool>(fields >> m.scale.lr_width >> m.scale.lr_height);
    } else if (key == "scale_factor") {
      ok = static_cast<bool>(fields >> m.scale.factor);
      m.spec.scale_factor = m.scale.factor;
    } else if (key == "blur_sigma") {
      ok = static_cast<bool>(fields >> m.spec.blur_sigma);
    } else if (key == "noise_sigma") {
      ok = static_cast<bool>(fields >> m.spec.noise_sigma);
    } else if (key == "seed") {
      ok = static_cast<bool>(fields >> m.spec.seed);
    } else if (key == "deformation_amplitude") {
      ok = static_cast<bool>(fields >> m.spec.deformation_amplitude);
    } else if (key == "deformation_smoothness") {
      ok = static_cast<bool>(fields >> m.spec.deformation_smoothness);
    } else if (key == "num_frames") {
      ok = static_cast<bool>(fields >> declared_frames);
    } else if (key == "reference") {
      ok = static_cast<bool>(fields >> m.reference_index);
    } else if (key == "ground_truth") {
      std::string p;
      ok = static_cast<bool>(fields >> p);
      m.ground_truth = base / p;
    } else if (key == "frame") {
      std::string frame, flow;
      ok = static_cast<bool>(fields >> frame >> flow);
      m.frames.push_back(base / frame);
      m.flows.push_back(base / flow);
    } else {
      malformed(path, lineno, "unknown key '" + key + "'");
    }
    if (!ok) malformed(path, lineno, "bad value for '" + key + "'");
  }
  if (!have_header) malformed(path, 1, "missing 'mfsr-dataset 1' header");
  if (!have_hr) malformed(path, lineno, "missing hr_size");
  if (m.frames.empty()) malformed(path, lineno, "no frames listed");
  if (declared_frames >= 0 && declared_frames != static_cast<int>(m.frames.size())) {
    throw FormatError(Kind::kSizeMismatch, path.string() + ": num_frames does not match the frame list");
  }
  m.spec.num_frames = static_cast<int>(m.frames.size());
  const ScaleSpec expected =
      ScaleSpec::from_hr(m.scale.hr_width, m.scale.hr_height, m.scale.factor);
  if (expected.lr_width != m.scale.lr_width || expected.lr_height != m.scale.lr_height) {
    throw FormatError(Kind::kSizeMismatch, path.string() + ": lr_size inconsistent with scale_factor");
  }
  if (m.reference_index < 0 || m.reference_index >= static_cast<int>(m.frames.size())) {
    malformed(path, lineno, "reference index out of range");
  }
  return m;
}

LoadedDataset load_dataset(const std::filesystem::path& manifest_path) {
  LoadedDataset ds;
  ds.manifest = read_manifest(manifest_path);
  const ScaleSpec& s = ds.manifest.scale;
  for (std::size_t i = 0; i < ds.manifest.frames.size(); ++i) {
    Image frame = read_image(ds.manifest.frames[i]);
    require_shape(frame, s.lr_width, s.lr_height, "dataset frame");
    ds.frames.push_back(std::move(frame));
    ds.flows.push_back(read_flow(ds.manifest.flows[i]));
  }
  if (ds.manifest.ground_truth) {
    Image gt = read_image(*ds.manifest.ground_truth);
    require_shape(gt, s.hr_width, s.hr_height, "ground truth");
    ds.ground_truth = std::move(gt);
  }
  return ds;
}

}  // namespace mfsr
