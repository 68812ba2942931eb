#include "mfsr/sector_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mfsr/boundary.hpp"
#include "mfsr/error.hpp"

namespace mfsr {
namespace {

struct Position {
  int dx;
  int dy;
};

void fill_smoothing(Sector& sector, double sigma, SectorCentre centre) {
  const std::size_t n = sector.domain_size();
  std::vector<Position> pos(n);
  pos[0] = {0, 0};
  for (std::size_t m = 0; m < sector.members.size(); ++m) {
    pos[m + 1] = {sector.members[m].dx, sector.members[m].dy};
  }
  sector.smoothing.assign(n * n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double* row = &sector.smoothing[t * n];
    if (sigma == 0.0) {
      row[t] = 1.0;
      continue;
    }
    double total = 0.0;
    for (std::size_t k = (centre == SectorCentre::kIncluded ? 0 : 1); k < n; ++k) {
      const double ddx = pos[k].dx - pos[t].dx;
      const double ddy = pos[k].dy - pos[t].dy;
      row[k] = std::exp(-(ddx * ddx + ddy * ddy) / (2.0 * sigma * sigma));
      total += row[k];
    }
    for (std::size_t k = 0; k < n; ++k) row[k] /= total;
  }
}

}  // namespace

std::size_t SectorGeometry::offset_count() const noexcept {
  std::size_t n = 0;
  for (const Sector& s : sectors) n += s.members.size();
  return n;
}

int sector_of(int dx, int dy, int num_sectors) {
  double theta = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  // The slack absorbs rounding for offsets lying exactly on a bin edge (the
  // axes); no lattice point in a practical disc is that close to an edge otherwise.
  const double bin = num_sectors * theta / (2.0 * std::numbers::pi) + 1e-9;
  return static_cast<int>(std::floor(bin)) % num_sectors;
}

SectorGeometry build_sector_geometry(int num_sectors, int radius, double sigma,
                                     SectorCentre centre) {
  if (num_sectors < 1) throw ContractError("need at least one sector");
  if (radius < 1) throw ContractError("sector radius must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ContractError("sigma must be >= 0");

  SectorGeometry geo;
  geo.num_sectors = num_sectors;
  geo.radius = radius;
  geo.sigma = sigma;
  geo.centre = centre;
  geo.sectors.resize(num_sectors);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const int d2 = dx * dx + dy * dy;
      if (d2 == 0 || d2 > radius * radius) continue;
      SectorOffset off{dx, dy, std::sqrt(static_cast<double>(d2)), 1.0 / d2};
      geo.sectors[sector_of(dx, dy, num_sectors)].members.push_back(off);
    }
  }
  for (Sector& s : geo.sectors) {
    fill_smoothing(s, sigma, centre);
    for (const SectorOffset& off : s.members) geo.inverse_square_sum += off.inv_distance_sq;
  }
  return geo;
}

std::vector<SectorSmoothing> sector_smooth(const Image& u, int cx, int cy,
                                           const SectorGeometry& geometry) {
  if (cx < 0 || cy < 0 || cx >= u.width() || cy >= u.height()) {
    throw DimensionError("sector_smooth: centre outside the image");
  }
  std::vector<SectorSmoothing> out(geometry.sectors.size());
  std::vector<double> vals;
  for (std::size_t l = 0; l < geometry.sectors.size(); ++l) {
    const Sector& s = geometry.sectors[l];
    const std::size_t n = s.domain_size();
    vals.assign(n, u(cx, cy));
    for (std::size_t m = 0; m < s.members.size(); ++m) {
      vals[m + 1] = u(reflect(cx + s.members[m].dx, u.width()),
                      reflect(cy + s.members[m].dy, u.height()));
    }
    out[l].members.resize(s.members.size());
    for (std::size_t t = 0; t < n; ++t) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += s.weight(t, k) * vals[k];
      if (t == 0) {
        out[l].centre = acc;
      } else {
        out[l].members[t - 1] = acc;
      }
    }
  }
  return out;
}

Image sd_operator(const Image& u, const DiffusivityParams& params, const SectorGeometry& geometry) {
  validate(params);
  const int w = u.width();
  const int h = u.height();
  const int r = geometry.radius;
  const bool raw = geometry.passthrough();

  // Linear offsets for the interior fast path.
  std::vector<std::vector<std::ptrdiff_t>> linear(geometry.sectors.size());
  std::size_t widest = 0;
  for (std::size_t l = 0; l < geometry.sectors.size(); ++l) {
    for (const SectorOffset& off : geometry.sectors[l].members) {
      linear[l].push_back(static_cast<std::ptrdiff_t>(off.dy) * w + off.dx);
    }
    widest = std::max(widest, geometry.sectors[l].domain_size());
  }

  std::vector<double> vals(widest);
  std::vector<double> smooth(widest);
  const auto src = u.pixels();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const bool row_inside = y >= r && y + r < h;
    for (int x = 0; x < w; ++x) {
      const bool inside = row_inside && x >= r && x + r < w;
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      const double ui = src[idx];
      double acc = 0.0;
      for (std::size_t l = 0; l < geometry.sectors.size(); ++l) {
        const Sector& s = geometry.sectors[l];
        const std::size_t nm = s.members.size();
        if (nm == 0) continue;
        const std::size_t n = nm + 1;
        vals[0] = ui;
        if (inside) {
          for (std::size_t m = 0; m < nm; ++m) vals[m + 1] = src[idx + linear[l][m]];
        } else {
          for (std::size_t m = 0; m < nm; ++m) {
            vals[m + 1] = u(reflect(x + s.members[m].dx, w), reflect(y + s.members[m].dy, h));
          }
        }
        const double* sm = vals.data();
        if (!raw) {
          for (std::size_t t = 0; t < n; ++t) {
            const double* row = &s.smoothing[t * n];
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += row[k] * vals[k];
            smooth[t] = v;
          }
          sm = smooth.data();
        }
        for (std::size_t m = 0; m < nm; ++m) {
          const SectorOffset& off = s.members[m];
          const double g = diffusivity((sm[m + 1] - sm[0]) / off.distance, params.lambda);
          acc += g * (vals[m + 1] - ui) * off.inv_distance_sq;
        }
      }
      out[idx] = acc;
    }
  }
  return out;
}

double sd_tau_max(const SectorGeometry& geometry) {
  if (geometry.inverse_square_sum <= 0.0) throw ContractError("empty sector geometry");
  return std::nextafter(1.0 / geometry.inverse_square_sum, 0.0);
}

Image sd_denoise(const Image& f, const DiffusivityParams& params, const SectorGeometry& geometry,
                 double tau, int k_max, const StepObserver& observer) {
  validate(params);
  const double bound = sd_tau_max(geometry);
  if (!(tau > 0.0) || tau > bound) {
    throw ContractError("sector diffusion needs 0 < tau <= " + std::to_string(bound) +
                        ", got " + std::to_string(tau));
  }
  if (k_max < 0) throw ContractError("k_max must be >= 0");
  Image u = f;
  for (int k = 1; k <= k_max; ++k) {
    Image update = sd_operator(u, params, geometry);
    update *= tau;
    u += update;
    if (observer) observer(k, u);
  }
  return u;
}

}  // namespace mfsr
