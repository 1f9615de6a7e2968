#include "dwell/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

void check_normalized(const WellOccupancy& occ) {
  if (!(std::abs(occ.total() - 1.0) <= 1e-6)) {
    throw PreconditionError("occupancy: state is not normalized (total " +
                            std::to_string(occ.total()) + ")");
  }
}

void check_grid_size(std::size_t grid_size) {
  if (grid_size < 101 || grid_size % 2 == 0) {
    throw ValidationError("grid size must be odd and at least 101");
  }
}

std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> grid(points);
  const double h = 1.0 / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) * h;
  grid.back() = 1.0;
  return grid;
}

template <typename Evaluator>
DensityProfile sample_density(Evaluator&& psi, std::size_t grid_size) {
  check_grid_size(grid_size);
  DensityProfile profile;
  profile.grid = uniform_grid(grid_size);
  profile.density.reserve(grid_size);
  for (double x : profile.grid) {
    const double v = psi(x);
    profile.density.push_back(v * v);
  }
  return profile;
}

}  // namespace

double simpson(std::span<const double> samples, double spacing) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) {
    throw ValidationError("Simpson rule needs an odd number (>= 3) of samples");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    (i % 2 == 1 ? odd : even) += samples[i];
  }
  return spacing / 3.0 * (samples.front() + 4.0 * odd + 2.0 * even + samples.back());
}

double simpson(const std::function<double(double)>& f, double lo, double hi,
               std::size_t points) {
  if (points < 3 || points % 2 == 0) {
    throw ValidationError("Simpson rule needs an odd number (>= 3) of points");
  }
  const double h = (hi - lo) / static_cast<double>(points - 1);
  std::vector<double> samples(points);
  for (std::size_t i = 0; i < points; ++i) {
    samples[i] = f(i + 1 == points ? hi : lo + static_cast<double>(i) * h);
  }
  return simpson(samples, h);
}

double DensityProfile::integral() const {
  if (grid.size() < 2) return 0.0;
  return simpson(density, grid[1] - grid[0]);
}

WellOccupancy occupancy(const AnalyticState& state) {
  const RegionIntegrals r = region_integrals(state);
  const WellOccupancy occ{r.left, r.barrier, r.right};
  check_normalized(occ);
  return occ;
}

WellOccupancy occupancy(const SpectralState& state, const PotentialSpec& spec,
                        std::size_t min_points) {
  const auto density = [&](double x) {
    const double v = wavefunction_at(state, x);
    return v * v;
  };
  const auto nodes_for = [&](double length) {
    const auto half = static_cast<std::size_t>(
        std::ceil(static_cast<double>(min_points) * length / 2.0));
    return std::max<std::size_t>(2 * half + 1, 101);
  };
  const double w = spec.w();
  const double xb = spec.right_edge();
  const WellOccupancy occ{simpson(density, 0.0, w, nodes_for(w)),
                          simpson(density, w, xb, nodes_for(spec.b())),
                          simpson(density, xb, 1.0, nodes_for(1.0 - xb))};
  check_normalized(occ);
  return occ;
}

std::vector<PairSplitting> pair_splitting(std::span<const double> energies) {
  if (energies.size() < 2) {
    throw ValidationError("pair_splitting needs at least two energies");
  }
  if (!std::is_sorted(energies.begin(), energies.end())) {
    throw ValidationError("pair_splitting needs ascending energies");
  }
  std::vector<PairSplitting> pairs;
  for (std::size_t i = 0; i + 1 < energies.size(); i += 2) {
    pairs.push_back({0.5 * (energies[i] + energies[i + 1]),
                     energies[i + 1] - energies[i]});
  }
  return pairs;
}

DensityProfile density_profile(const AnalyticState& state, std::size_t grid_size) {
  return sample_density([&](double x) { return state.value(x); }, grid_size);
}

DensityProfile density_profile(const SpectralState& state, std::size_t grid_size) {
  return sample_density([&](double x) { return wavefunction_at(state, x); },
                        grid_size);
}

}  // namespace dwell
