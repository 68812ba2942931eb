#pragma once

#include <vector>

#include "mfsr/diffusion.hpp"
#include "mfsr/image.hpp"
#include "mfsr/solver.hpp"

namespace mfsr {

/// Candidate values per parameter. Iteration counts are not enumerated:
/// every run records the error after each step up to `max_iterations` and
/// keeps the best step, which is the same as searching k_max in [0, max].
struct ParamGrid {
  std::vector<double> sigma;
  std::vector<double> sigma_b;
  std::vector<double> lambda;
  std::vector<double> alpha;
  int max_iterations = 50;
};

enum class SearchStrategy { kExhaustive, kCoordinateDescent };

struct SearchResult {
  SolverConfig best;
  double mse = 0.0;
  int evaluations = 0;  ///< reconstructions run
};

/// Minimises reconstruction MSE against `ground_truth`. Model, regulariser,
/// tau and scale come from problem.config. Ties keep the first minimum in
/// iteration order (sigma_b, sigma, lambda, alpha, then k ascending).
///
/// Coordinate descent starts from the first value on every axis and sweeps
/// the axes in that order until a full sweep changes nothing.
SearchResult grid_search(const SRProblem& problem, const Image& ground_truth,
                         const ParamGrid& grid,
                         SearchStrategy strategy = SearchStrategy::kExhaustive);

enum class DenoiseMethod { kEed, kSector };

struct DenoiseSearchResult {
  DiffusivityParams params;
  int k_max = 0;
  double mse = 0.0;
};

/// Exhaustive (sigma, lambda) search for a pure denoiser with the best
/// iteration count up to max_iterations. tau <= 0 selects the default
/// (0.2 for EED, the stability bound for SD).
DenoiseSearchResult search_denoise(DenoiseMethod method, const Image& noisy, const Image& clean,
                                   const std::vector<double>& sigmas,
                                   const std::vector<double>& lambdas, int max_iterations,
                                   double tau = 0.0);

}  // namespace mfsr
