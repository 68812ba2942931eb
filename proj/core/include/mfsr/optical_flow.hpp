#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mfsr/image.hpp"

namespace mfsr {

/// Parameters of the variational flow model: robust brightness constancy plus
/// robust flow smoothness, Psi(s^2) = sqrt(s^2 + eps^2) for both terms.
struct FlowParams {
  double alpha = 15.6;        ///< smoothness weight alpha_OF
  double sigma = 1.0;         ///< Gaussian pre-smoothing sigma_OF
  double eta = 0.95;          ///< pyramid downsampling factor
  int inner_iterations = 10;  ///< lagged-nonlinearity iterations eta_1
  int outer_iterations = 10;  ///< warping iterations per level eta_2
  double omega = 1.95;        ///< SOR relaxation
  double epsilon = 1e-3;      ///< robust penaliser regularisation
  int sor_iterations = 10;    ///< SOR sweeps per linear system
  int min_size = 8;           ///< smallest pyramid dimension in pixels
};

void validate(const FlowParams& params);

/// Per-dataset (sigma_OF, alpha_OF) settings used for the text and house sequences.
struct FlowPreset {
  std::string_view name;
  double sigma;
  double alpha;
};

inline constexpr FlowPreset kFlowPresets[] = {
    {"text1", 2.6, 13.3},  {"text2", 1.0, 15.6},  {"text3", 2.3, 6.3},
    {"house1", 3.8, 13.5}, {"house2", 1.2, 17.0}, {"house3", 2.7, 16.5},
};

std::optional<FlowPreset> find_flow_preset(std::string_view name);

/// Level count ceil(log(min_size / min(w, h)) / log(eta)), at least one.
int pyramid_depth(int width, int height, double eta, int min_size = 8);

/// Level k has size ceil(w eta^k) x ceil(h eta^k); level 0 is the input size.
std::vector<std::pair<int, int>> pyramid_sizes(int width, int height, double eta,
                                               int min_size = 8);

/// Level 0 is `img` itself; each further level is the previous one smoothed
/// with a Gaussian matched to the shrink ratio and resampled bilinearly.
std::vector<Image> build_pyramid(const Image& img, double eta, int min_size = 8);

/// Dense flow on the reference grid pointing from reference coordinates to
/// target coordinates, so warp_forward(target, flow) approximates reference.
///
/// Coarse-to-fine: at each level the target is warped with the current flow,
/// the increment is found by outer (warping) and inner (lagged diffusivity)
/// fixed-point loops, and each linear system is relaxed by SOR.
FlowField estimate_flow(const Image& reference, const Image& target, const FlowParams& params);

}  // namespace mfsr
