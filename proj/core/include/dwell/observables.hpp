#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dwell/analytic.hpp"
#include "dwell/potential.hpp"
#include "dwell/spectral.hpp"

namespace dwell {

/// Integrated probability in each region of the double well.
struct WellOccupancy {
  double p_left = 0.0;
  double p_barrier = 0.0;
  double p_right = 0.0;

  double total() const noexcept { return p_left + p_barrier + p_right; }
  /// Left-well share of the probability found in either well.
  double left_share() const noexcept { return p_left / (p_left + p_right); }
  double right_share() const noexcept { return p_right / (p_left + p_right); }
};

/// Probability density sampled on a uniform grid over [0, 1].
struct DensityProfile {
  std::vector<double> grid;
  std::vector<double> density;

  /// Composite Simpson integral of the density.
  double integral() const;
};

struct PairSplitting {
  double mean;
  double gap;
};

inline constexpr std::size_t kDefaultGridSize = 2001;

/// Composite Simpson rule over equally spaced samples; needs an odd count
/// of at least three.
double simpson(std::span<const double> samples, double spacing);

/// Simpson integral of f over [lo, hi] with `points` nodes (odd, >= 3).
double simpson(const std::function<double(double)>& f, double lo, double hi,
               std::size_t points);

/// Closed-form region integrals of an analytic state.
/// Throws PreconditionError if the total differs from one by more than 1e-6.
WellOccupancy occupancy(const AnalyticState& state);

/// Region integrals of a spectral state by composite Simpson, integrating
/// each region separately so the interfaces are grid nodes. At least
/// `min_points` nodes are used in total.
/// Throws PreconditionError if the total differs from one by more than 1e-6.
WellOccupancy occupancy(const SpectralState& state, const PotentialSpec& spec,
                        std::size_t min_points = kDefaultGridSize);

/// Groups sorted energies into consecutive pairs (e1, e2), (e3, e4), ...
/// and returns each pair's mean and gap. A trailing odd level is ignored.
/// Throws ValidationError for fewer than two or unsorted energies.
std::vector<PairSplitting> pair_splitting(std::span<const double> energies);

/// |psi|^2 on a uniform grid of `grid_size` points (odd, >= 101).
DensityProfile density_profile(const AnalyticState& state,
                               std::size_t grid_size = kDefaultGridSize);
DensityProfile density_profile(const SpectralState& state,
                               std::size_t grid_size = kDefaultGridSize);

}  // namespace dwell
