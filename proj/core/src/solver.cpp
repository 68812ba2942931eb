#include "mfsr/solver.hpp"

#include <cctype>
#include <cstdio>
#include <string>

#include "mfsr/error.hpp"
#include "mfsr/metrics.hpp"
#include "mfsr/warp.hpp"

namespace mfsr {

std::string_view to_string(Regulariser reg) noexcept {
  switch (reg) {
    case Regulariser::kHomogeneous: return "hd";
    case Regulariser::kEed: return "eed";
    case Regulariser::kSector: return "sd";
  }
  return "?";
}

std::optional<Regulariser> parse_regulariser(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "hd" || s == "homogeneous") return Regulariser::kHomogeneous;
  if (s == "eed") return Regulariser::kEed;
  if (s == "sd" || s == "sector") return Regulariser::kSector;
  return std::nullopt;
}

double default_sr_tau(Regulariser reg) noexcept {
  return reg == Regulariser::kSector ? kSrTauSector : kSrTauEed;
}

void validate(const SolverConfig& c) {
  if (!(c.alpha >= 0.0)) throw ContractError("alpha must be >= 0");
  if (!(c.tau > 0.0)) throw ContractError("tau must be positive");
  if (c.k_max < 0) throw ContractError("k_max must be >= 0");
  if (!(c.blur.sigma >= 0.0)) throw ContractError("blur sigma must be >= 0");
  if (c.scale.hr_width < 1 || c.scale.lr_width < 1) throw DimensionError("scale spec is unset");
  validate(c.diffusivity);
}

Reconstructor::Reconstructor(const SRProblem& problem)
    : config_(problem.config), frames_(problem.frames) {
  validate(config_);
  if (frames_.empty()) throw DimensionError("SR problem has no frames");
  if (problem.flows.size() != frames_.size()) {
    throw DimensionError("SR problem needs one flow per frame (" + std::to_string(frames_.size()) +
                         " frames, " + std::to_string(problem.flows.size()) + " flows)");
  }
  const ScaleSpec& s = config_.scale;
  for (const Image& f : frames_) require_shape(f, s.lr_width, s.lr_height, "SR frame");

  const int n = static_cast<int>(frames_.size());
  reference_index_ = problem.reference_index < 0 ? n - 1 : problem.reference_index;
  if (reference_index_ >= n) throw DimensionError("reference index out of range");

  const ObservationalModel flow_model =
      config_.model == ObservationalModel::kM2_1 ? ObservationalModel::kM1 : config_.model;
  flows_.reserve(problem.flows.size());
  for (const FlowField& f : problem.flows) flows_.push_back(flow_for_model(flow_model, f, s));

  if (config_.model == ObservationalModel::kM2_1) {
    const auto rhs = precompute_m21_rhs(frames_, flows_, s);
    Image total(s.hr_width, s.hr_height);
    for (const Image& r : rhs) total += r;
    m21_rhs_sum_ = std::move(total);
  }
  if (config_.regulariser == Regulariser::kSector) {
    geometry_ = build_sector_geometry(config_.num_sectors, config_.sector_radius,
                                      config_.diffusivity.sigma);
  }
}

Image Reconstructor::initialise() const {
  return interpolate_to_hr(frames_[reference_index_], config_.scale);
}

Image Reconstructor::data_gradient(const Image& u) const {
  const ScaleSpec& s = config_.scale;
  require_shape(u, s.hr_width, s.hr_height, "SR iterate");
  if (m21_rhs_sum_) {
    // sum_i B (B u - r_i) = B (N B u - sum_i r_i)
    Image residual = blur(u, config_.blur);
    residual *= static_cast<double>(frames_.size());
    residual -= *m21_rhs_sum_;
    return blur(residual, config_.blur);
  }
  Image grad(s.hr_width, s.hr_height);
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    Image residual = apply_model(config_.model, u, flows_[i], config_.blur, s);
    residual -= frames_[i];
    grad += apply_model_adjoint(config_.model, residual, flows_[i], config_.blur, s);
  }
  return grad;
}

Image Reconstructor::regulariser_term(const Image& u) const {
  switch (config_.regulariser) {
    case Regulariser::kHomogeneous: return laplacian(u);
    case Regulariser::kEed: return eed_operator(u, config_.diffusivity);
    case Regulariser::kSector: return sd_operator(u, config_.diffusivity, *geometry_);
  }
  return laplacian(u);
}

Image Reconstructor::step(const Image& u) const {
  Image update = data_gradient(u);
  update *= -1.0;
  if (config_.alpha != 0.0) {
    Image reg = regulariser_term(u);
    reg *= config_.alpha;
    update += reg;
  }
  update *= config_.tau;
  update += u;
  return update;
}

Image Reconstructor::run(const IterationObserver& observer) const {
  Image u = initialise();
  for (int k = 1; k <= config_.k_max; ++k) {
    u = step(u);
    if (observer) observer(k, u);
  }
  return u;
}

double Reconstructor::energy(const Image& u) const {
  const ScaleSpec& s = config_.scale;
  double data = 0.0;
  if (config_.model == ObservationalModel::kM2_1) {
    const auto rhs = precompute_m21_rhs(frames_, flows_, s);
    const Image bu = blur(u, config_.blur);
    for (const Image& r : rhs) data += 0.5 * dot(bu - r, bu - r);
  } else {
    for (std::size_t i = 0; i < frames_.size(); ++i) {
      const Image residual = apply_model(config_.model, u, flows_[i], config_.blur, s) - frames_[i];
      data += 0.5 * dot(residual, residual);
    }
  }
  return data - 0.5 * config_.alpha * dot(u, laplacian(u));
}

Image initialise(const SRProblem& problem) { return Reconstructor(problem).initialise(); }

Image sr_step(const Image& u, const SRProblem& problem) { return Reconstructor(problem).step(u); }

Image reconstruct(const SRProblem& problem, const IterationObserver& observer) {
  return Reconstructor(problem).run(observer);
}

std::vector<ModelEvaluation> evaluate_models(const SRProblem& problem,
                                             std::span<const SolverConfig> configs,
                                             const Image& ground_truth) {
  std::vector<ModelEvaluation> rows;
  rows.reserve(configs.size());
  for (const SolverConfig& config : configs) {
    SRProblem p = problem;
    p.config = config;
    rows.push_back({config, mse(reconstruct(p), ground_truth)});
  }
  return rows;
}

void write_evaluation_csv(std::ostream& out, std::span<const ModelEvaluation> rows) {
  out << "model,sigma,sigma_b,lambda,alpha,k_max,mse\n";
  char buf[256];
  for (const ModelEvaluation& row : rows) {
    const SolverConfig& c = row.config;
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.6g,%.6g,%d,%.6f\n",
                  std::string(to_string(c.model)).c_str(), c.diffusivity.sigma, c.blur.sigma,
                  c.diffusivity.lambda, c.alpha, c.k_max, row.mse);
    out << buf;
  }
}

}  // namespace mfsr
