#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "mfsr/blur.hpp"
#include "mfsr/diffusion.hpp"
#include "mfsr/image.hpp"
#include "mfsr/observation.hpp"
#include "mfsr/resample.hpp"
#include "mfsr/sector_diffusion.hpp"

namespace mfsr {

enum class Regulariser { kHomogeneous, kEed, kSector };

std::string_view to_string(Regulariser reg) noexcept;
std::optional<Regulariser> parse_regulariser(std::string_view text);

inline constexpr double kSrTauEed = 0.05;
inline constexpr double kSrTauSector = 0.012;

/// Time step used for SR when none is given: 0.05 (HD, EED) or 0.012 (SD).
double default_sr_tau(Regulariser reg) noexcept;

struct SolverConfig {
  ObservationalModel model = ObservationalModel::kM1;
  Regulariser regulariser = Regulariser::kSector;
  double alpha = 1.0;
  double tau = kSrTauSector;
  int k_max = 20;
  BlurSpec blur;
  ScaleSpec scale;
  DiffusivityParams diffusivity;
  int num_sectors = kDefaultSectorCount;
  int sector_radius = kDefaultSectorRadius;
};

void validate(const SolverConfig& config);

/// Observed LR frames with one flow each. Flows may live on either grid;
/// they are converted to the grid the configured model expects.
struct SRProblem {
  std::vector<Image> frames;
  std::vector<FlowField> flows;
  SolverConfig config;
  /// Frame used for initialisation; negative means the last frame.
  int reference_index = -1;
};

/// Called after every step with the 1-based step index and the iterate.
using IterationObserver = std::function<void(int step, const Image& u)>;

/// Explicit gradient descent
///   u <- u + tau (alpha A_reg(u) - sum_i O_i^T (O_i u - f_i))
/// with everything that does not depend on u (flows on the model grid,
/// sector tables, M2.1 right-hand sides) prepared once at construction.
class Reconstructor {
 public:
  explicit Reconstructor(const SRProblem& problem);

  const SolverConfig& config() const noexcept { return config_; }

  /// Bilinear interpolation of the reference frame onto the HR grid.
  Image initialise() const;

  /// sum_i O_i^T (O_i u - f_i), summed in frame order.
  Image data_gradient(const Image& u) const;

  /// alpha-free smoothness increment A_reg(u).
  Image regulariser_term(const Image& u) const;

  Image step(const Image& u) const;

  /// k_max steps from initialise().
  Image run(const IterationObserver& observer = {}) const;

  /// 1/2 sum_i |O_i u - f_i|^2 + 1/2 alpha |grad u|^2 (the homogeneous energy).
  double energy(const Image& u) const;

 private:
  SolverConfig config_;
  std::vector<Image> frames_;
  std::vector<FlowField> flows_;
  int reference_index_;
  std::optional<SectorGeometry> geometry_;
  std::optional<Image> m21_rhs_sum_;
};

Image initialise(const SRProblem& problem);
Image sr_step(const Image& u, const SRProblem& problem);
Image reconstruct(const SRProblem& problem, const IterationObserver& observer = {});

struct ModelEvaluation {
  SolverConfig config;
  double mse = 0.0;
};

/// One reconstruction per configuration (each carries its own model tag and
/// parameters) over the frames and flows of `problem`, scored against `ground_truth`.
std::vector<ModelEvaluation> evaluate_models(const SRProblem& problem,
                                             std::span<const SolverConfig> configs,
                                             const Image& ground_truth);

/// CSV with header model,sigma,sigma_b,lambda,alpha,k_max,mse.
void write_evaluation_csv(std::ostream& out, std::span<const ModelEvaluation> rows);

}  // namespace mfsr
