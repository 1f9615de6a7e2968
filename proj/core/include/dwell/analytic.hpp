#pragma once

#include <cstddef>
#include <vector>

#include "dwell/potential.hpp"

namespace dwell {

/// Dimensionless wavenumbers (times a) at energy e:
/// k = pi sqrt(e - vL), q = pi sqrt(e - vR), kappa = pi sqrt(v0 - e).
struct Wavenumbers {
  double k;
  double q;
  double kappa;
};

/// Throws DomainError unless max(vL, vR) < e <= v0.
Wavenumbers wavenumbers(const PotentialSpec& spec, double e);

/// Piecewise amplitudes of a sub-barrier state:
///   [0, w]       psi = left * sin(k x)
///   [w, w + b]   psi = barrier_rise * exp(kappa (x - w - b))
///                    + barrier_fall * exp(-kappa (x - w))
///   [w + b, 1]   psi = right * sin(q (1 - x))
/// Each barrier exponential is anchored at the interface where it is
/// largest, so no term overflows however thick the barrier is.
struct Amplitudes {
  double left;
  double barrier_rise;
  double barrier_fall;
  double right;
};

/// A normalized bound state of the square double well.
struct AnalyticState {
  PotentialSpec spec;
  double energy;
  Wavenumbers wave;
  Amplitudes amp;

  double value(double x) const;
  double derivative(double x) const;
};

/// Probability in the left well, the barrier and the right well, from the
/// closed-form antiderivatives. Sums to one for an assembled state.
struct RegionIntegrals {
  double left;
  double barrier;
  double right;
};
RegionIntegrals region_integrals(const AnalyticState& state);

/// Left-hand side minus right-hand side of the matching condition
///   (sin kw + (k/kappa) cos kw)(sin qw + (q/kappa) cos qw)
///     = exp(-2 kappa b)(sin kw - (k/kappa) cos kw)(sin qw - (q/kappa) cos qw).
/// Zero exactly at the allowed energies. Throws DomainError unless
/// max(vL, vR) < e < v0.
double quantization_residual(const PotentialSpec& spec, double e);

/// Number of bound states with energy strictly below e, from the node count
/// of the solution that vanishes at x = 0 (Sturm oscillation theorem).
/// Throws DomainError unless max(vL, vR) < e <= v0.
std::size_t count_levels_below(const PotentialSpec& spec, double e);

struct LevelOptions {
  /// Absolute bracket width at which root refinement stops. The default of
  /// zero bisects until the bracket cannot shrink any further; occupancies of
  /// near-degenerate pairs need this, since the amplitude ratio is sensitive
  /// to energy errors on the scale of the pair gap.
  double tolerance = 0.0;
};

/// The lowest `count` roots of quantization_residual, ascending.
///
/// Roots are isolated by bisecting on count_levels_below until each bracket
/// holds exactly one level, so near-degenerate pairs are always separated
/// however small their gap. Each bracket is then refined by bisection on the
/// residual. Pairs closer than one ulp are reported as equal values.
///
/// Throws PartialResultError (carrying the roots found) if fewer than
/// `count` levels lie below v0, and DomainError if a level lies below a well
/// floor, where the sub-barrier form of the solution does not apply.
std::vector<double> find_levels(const PotentialSpec& spec, std::size_t count,
                                const LevelOptions& options = {});

/// |D/A| from the two equivalent closed forms
///   exp(-kappa b) |kappa sin kw - k cos kw| / |kappa sin qw + q cos qw|
///   exp(+kappa b) |kappa sin kw + k cos kw| / |kappa sin qw - q cos qw|.
/// Each has one factor that cancels near a root. The form whose cancelling
/// factor is larger is used; for the ground state this is the first form
/// when vR >= vL and the second when vR < vL. If the chosen form degenerates
/// (zero denominator, under/overflow) the other one is used; if both do,
/// NumericalError is thrown.
double amplitude_ratio(const PotentialSpec& spec, double e);

/// Both closed forms of |D/A|, unselected; non-finite when degenerate.
struct AmplitudeRatioForms {
  double decaying;  // exp(-kappa b) form
  double growing;   // exp(+kappa b) form
};
AmplitudeRatioForms amplitude_ratio_forms(const PotentialSpec& spec, double e);

/// Normalized piecewise state at an allowed energy e, signed so that the
/// integral of psi over the right well is non-negative (ties: left well).
/// Throws PreconditionError if |quantization_residual(e)| > 1e-6.
AnalyticState assemble_state(const PotentialSpec& spec, double e);

/// find_levels followed by assemble_state for each level.
std::vector<AnalyticState> solve_analytic(const PotentialSpec& spec,
                                          std::size_t count,
                                          const LevelOptions& options = {});

}  // namespace dwell
