#include "mfsr/grid_search.hpp"

#include <array>
#include <limits>
#include <map>

#include "mfsr/error.hpp"
#include "mfsr/metrics.hpp"
#include "mfsr/sector_diffusion.hpp"

namespace mfsr {
namespace {

using Index = std::array<std::size_t, 4>;  // sigma_b, sigma, lambda, alpha

struct Trial {
  double mse = std::numeric_limits<double>::infinity();
  int k = 0;
};

class Evaluator {
 public:
  Evaluator(const SRProblem& problem, const Image& truth, const ParamGrid& grid)
      : problem_(problem), truth_(truth), grid_(grid) {}

  const Trial& operator()(const Index& idx) {
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    SRProblem p = problem_;
    p.config = config_for(idx, grid_.max_iterations);
    Reconstructor solver(p);
    Trial best;
    best.mse = mse(solver.initialise(), truth_);
    solver.run([&](int k, const Image& u) {
      const double e = mse(u, truth_);
      if (e < best.mse) best = {e, k};
    });
    ++evaluations_;
    return cache_.emplace(idx, best).first->second;
  }

  SolverConfig config_for(const Index& idx, int k) const {
    SolverConfig c = problem_.config;
    c.blur.sigma = grid_.sigma_b[idx[0]];
    c.diffusivity.sigma = grid_.sigma[idx[1]];
    c.diffusivity.lambda = grid_.lambda[idx[2]];
    c.alpha = grid_.alpha[idx[3]];
    c.k_max = k;
    return c;
  }

  int evaluations() const noexcept { return evaluations_; }

 private:
  const SRProblem& problem_;
  const Image& truth_;
  const ParamGrid& grid_;
  std::map<Index, Trial> cache_;
  int evaluations_ = 0;
};

bool better(const Trial& a, const Trial& b) { return a.mse < b.mse; }

}  // namespace

SearchResult grid_search(const SRProblem& problem, const Image& ground_truth,
                         const ParamGrid& grid, SearchStrategy strategy) {
  const std::array<std::size_t, 4> extent{grid.sigma_b.size(), grid.sigma.size(),
                                          grid.lambda.size(), grid.alpha.size()};
  for (std::size_t n : extent) {
    if (n == 0) throw ContractError("grid_search: every parameter needs at least one value");
  }
  if (grid.max_iterations < 0) throw ContractError("grid_search: max_iterations must be >= 0");

  Evaluator eval(problem, ground_truth, grid);
  Index best_idx{0, 0, 0, 0};
  Trial best = eval(best_idx);

  if (strategy == SearchStrategy::kExhaustive) {
    Index idx{};
    for (idx[0] = 0; idx[0] < extent[0]; ++idx[0]) {
      for (idx[1] = 0; idx[1] < extent[1]; ++idx[1]) {
        for (idx[2] = 0; idx[2] < extent[2]; ++idx[2]) {
          for (idx[3] = 0; idx[3] < extent[3]; ++idx[3]) {
            const Trial& t = eval(idx);
            if (better(t, best)) {
              best = t;
              best_idx = idx;
            }
          }
        }
      }
    }
  } else {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t axis = 0; axis < 4; ++axis) {
        Index idx = best_idx;
        for (std::size_t v = 0; v < extent[axis]; ++v) {
          idx[axis] = v;
          const Trial& t = eval(idx);
          if (better(t, best)) {
            best = t;
            best_idx = idx;
            changed = true;
          }
        }
      }
    }
  }
  return {eval.config_for(best_idx, best.k), best.mse, eval.evaluations()};
}

DenoiseSearchResult search_denoise(DenoiseMethod method, const Image& noisy, const Image& clean,
                                   const std::vector<double>& sigmas,
                                   const std::vector<double>& lambdas, int max_iterations,
                                   double tau) {
  if (sigmas.empty() || lambdas.empty()) {
    throw ContractError("search_denoise: empty parameter grid");
  }
  DenoiseSearchResult best{{lambdas.front(), sigmas.front()}, 0, mse(noisy, clean)};
  for (double sigma : sigmas) {
    for (double lambda : lambdas) {
      const DiffusivityParams params{lambda, sigma};
      auto track = [&](int k, const Image& u) {
        const double e = mse(u, clean);
        if (e < best.mse) best = {params, k, e};
      };
      if (method == DenoiseMethod::kEed) {
        eed_denoise(noisy, params, tau > 0.0 ? tau : kEedDenoiseTau, max_iterations, track);
      } else {
        const SectorGeometry geo =
            build_sector_geometry(kDefaultSectorCount, kDefaultSectorRadius, sigma);
        sd_denoise(noisy, params, geo, tau > 0.0 ? tau : sd_tau_max(geo), max_iterations, track);
      }
    }
  }
  return best;
}

}  // namespace mfsr
