#pragma once

#include <vector>

#include "mfsr/diffusion.hpp"
#include "mfsr/image.hpp"

namespace mfsr {

/// Whether the centre pixel takes part in the sector-restricted smoothing.
///
/// kIncluded smooths over the sector members plus the centre, the discrete
/// analogue of smoothing along a segment that starts at the centre.
/// kExcluded smooths over the sector members only; the centre's value then
/// enters neither its own estimate nor its neighbours'.
enum class SectorCentre { kIncluded, kExcluded };

struct SectorOffset {
  int dx = 0;
  int dy = 0;
  double distance = 0.0;
  double inv_distance_sq = 0.0;
};

struct Sector {
  std::vector<SectorOffset> members;
  /// Row-major (n+1) x (n+1) table for n members. Row t is the smoothing
  /// target (0 = centre, m+1 = member m); column k the source (0 = centre,
  /// k = member k-1). Rows sum to one.
  std::vector<double> smoothing;

  std::size_t domain_size() const noexcept { return members.size() + 1; }
  double weight(std::size_t target, std::size_t source) const noexcept {
    return smoothing[target * domain_size() + source];
  }
};

/// Partition of the disc 0 < dx^2 + dy^2 <= radius^2 into angular sectors
/// together with the per-sector Gaussian smoothing tables.
struct SectorGeometry {
  int num_sectors = 0;
  int radius = 0;
  double sigma = 0.0;
  SectorCentre centre = SectorCentre::kIncluded;
  std::vector<Sector> sectors;
  /// Sum over all offsets of 1 / |offset|^2.
  double inverse_square_sum = 0.0;

  std::size_t offset_count() const noexcept;
  /// True for sigma == 0: smoothed values are the raw pixel values.
  bool passthrough() const noexcept { return sigma == 0.0; }
};

inline constexpr int kDefaultSectorCount = 36;
inline constexpr int kDefaultSectorRadius = 7;

/// Sector of an offset: floor(M * theta / 2 pi) mod M with theta = atan2(dy, dx)
/// taken in [0, 2 pi). Bins are half-open, [l 2pi/M, (l+1) 2pi/M).
int sector_of(int dx, int dy, int num_sectors);

/// Deterministic geometry tables. Smoothing weights are
/// h(k, j) = exp(-|x_k - x_j|^2 / (2 sigma^2)) normalised per target.
SectorGeometry build_sector_geometry(int num_sectors, int radius, double sigma,
                                     SectorCentre centre = SectorCentre::kIncluded);

/// Sector-restricted smoothed values around one pixel.
struct SectorSmoothing {
  double centre = 0.0;
  std::vector<double> members;
};

/// Smoothed values for every sector around (cx, cy); members outside the
/// image take reflected pixel values.
std::vector<SectorSmoothing> sector_smooth(const Image& u, int cx, int cy,
                                           const SectorGeometry& geometry);

/// A_SD u at every pixel:
///   sum over sectors l, members j of g((s_jl - s_il) / |x_j - x_i|) (u_j - u_i) / |x_j - x_i|^2
/// with s the sector-smoothed values.
Image sd_operator(const Image& u, const DiffusivityParams& params, const SectorGeometry& geometry);

/// Largest explicit step that keeps every update a convex combination,
/// i.e. 1 / sum_j |x_j - x_i|^-2 (the worst case g == 1), rounded down.
double sd_tau_max(const SectorGeometry& geometry);

/// k_max explicit steps with A_SD. Throws ContractError if tau > sd_tau_max.
Image sd_denoise(const Image& f, const DiffusivityParams& params, const SectorGeometry& geometry,
                 double tau, int k_max, const StepObserver& observer = {});

}  // namespace mfsr
