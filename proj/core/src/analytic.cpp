#include "dwell/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double pi = std::numbers::pi;

double floor_level(const PotentialSpec& spec) {
  return std::max(spec.vl(), spec.vr());
}

// Interface quantities at one energy. The "plus"/"minus" combinations are
// kappa * (sin kw +- (k/kappa) cos kw) and likewise for q; they stay finite
// as kappa -> 0.
struct Interface {
  Wavenumbers wave;
  double sin_k, cos_k;
  double sin_q, cos_q;
  double plus_left, minus_left;
  double plus_right, minus_right;
  double decay;  // exp(-kappa b)
};

Interface interface_at(const PotentialSpec& spec, double e) {
  Interface f{};
  f.wave = wavenumbers(spec, e);
  const double w = spec.w();
  const auto [k, q, kappa] = f.wave;
  f.sin_k = std::sin(k * w);
  f.cos_k = std::cos(k * w);
  f.sin_q = std::sin(q * w);
  f.cos_q = std::cos(q * w);
  f.plus_left = kappa * f.sin_k + k * f.cos_k;
  f.minus_left = kappa * f.sin_k - k * f.cos_k;
  f.plus_right = kappa * f.sin_q + q * f.cos_q;
  f.minus_right = kappa * f.sin_q - q * f.cos_q;
  f.decay = std::exp(-kappa * spec.b());
  return f;
}

// Total Pruefer angle at x = 1 of the solution with psi(0) = 0, psi'(0) > 0.
// psi(1) = 0 exactly when the angle is a multiple of pi, and the number of
// nodes in (0, 1) is ceil(angle / pi) - 1.
double right_wall_phase(const PotentialSpec& spec, double e) {
  const Wavenumbers wn = wavenumbers(spec, e);
  const double w = spec.w();
  const double b = spec.b();
  const auto [k, q, kappa] = wn;

  const double phase_w = k * w;
  const double nodes_w = std::floor(phase_w / pi);
  const double psi_w = std::sin(phase_w);
  const double dpsi_w = k * std::cos(phase_w);

  // Propagate through the barrier; only the direction of (psi, psi') at the
  // right interface matters, so any positive rescaling is allowed.
  double psi_b = 0.0;
  double dpsi_b = 0.0;
  const double kb = kappa * b;
  if (kb <= 1.0) {
    const double ch = std::cosh(kb);
    const double sh = std::sinh(kb);
    const double sh_over_kappa = kb == 0.0 ? b : sh / kappa;
    psi_b = psi_w * ch + dpsi_w * sh_over_kappa;
    dpsi_b = psi_w * kappa * sh + dpsi_w * ch;
  } else {
    const double eps2 = std::exp(-2.0 * kb);
    const double rising = psi_w + dpsi_w / kappa;
    const double falling = psi_w - dpsi_w / kappa;
    psi_b = rising + falling * eps2;
    dpsi_b = kappa * (rising - falling * eps2);
  }

  // The barrier solution has at most one node, and crosses one exactly when
  // the sign of psi changes across it.
  const bool even_w = std::fmod(nodes_w, 2.0) == 0.0;
  const bool positive_b = psi_b > 0.0;
  const double nodes_b = (positive_b == even_w) ? nodes_w : nodes_w + 1.0;

  double frac = std::atan2(psi_b, dpsi_b / q);
  if (frac < 0.0) frac += pi;
  if (frac >= pi) frac -= pi;
  return nodes_b * pi + frac + q * w;
}

// True when the j-th level (one-based) lies at or below e.
bool at_or_above_level(const PotentialSpec& spec, double e, std::size_t j) {
  return right_wall_phase(spec, e) >= static_cast<double>(j) * pi;
}

double midpoint(double lo, double hi) { return lo + 0.5 * (hi - lo); }

// Bisection on the node-count predicate; converges to the j-th level.
double bisect_on_count(const PotentialSpec& spec, std::size_t j, double lo,
                       double hi, double tolerance) {
  while (hi - lo > tolerance) {
    const double mid = midpoint(lo, hi);
    if (mid <= lo || mid >= hi) break;
    if (at_or_above_level(spec, mid, j)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return midpoint(lo, hi);
}

// Refines the single level j inside [lo, hi]. Prefers bisection on the
// residual; falls back to the node count when the residual does not show a
// clean sign change (root within a few ulp of a bracket end, or the bracket
// touching v0 where the residual is undefined).
double refine_level(const PotentialSpec& spec, std::size_t j, double lo,
                    double hi, double tolerance) {
  double top = hi;
  if (top >= spec.v0()) top = std::nextafter(spec.v0(), -INFINITY);
  if (top > lo) {
    const double r_lo = quantization_residual(spec, lo);
    const double r_hi = quantization_residual(spec, top);
    if ((r_lo < 0.0 && r_hi > 0.0) || (r_lo > 0.0 && r_hi < 0.0)) {
      double a = lo;
      double b = top;
      const bool rising = r_lo < 0.0;
      while (b - a > tolerance) {
        const double mid = midpoint(a, b);
        if (mid <= a || mid >= b) break;
        const double r = quantization_residual(spec, mid);
        if (r == 0.0) return mid;
        if ((r < 0.0) == rising) {
          a = mid;
        } else {
          b = mid;
        }
      }
      return midpoint(a, b);
    }
  }
  return bisect_on_count(spec, j, lo, hi, tolerance);
}

struct Bracket {
  double lo;
  double hi;
  std::size_t below_lo;
  std::size_t below_hi;
};

}  // namespace

Wavenumbers wavenumbers(const PotentialSpec& spec, double e) {
  if (!(e > floor_level(spec) && e <= spec.v0())) {
    throw DomainError("energy outside the sub-barrier window (max(vL, vR), v0]");
  }
  return {pi * std::sqrt(e - spec.vl()), pi * std::sqrt(e - spec.vr()),
          pi * std::sqrt(spec.v0() - e)};
}

double quantization_residual(const PotentialSpec& spec, double e) {
  if (!(e > floor_level(spec) && e < spec.v0())) {
    throw DomainError("energy outside the sub-barrier window (max(vL, vR), v0)");
  }
  const Interface f = interface_at(spec, e);
  const double kappa = f.wave.kappa;
  const double k_ratio = f.wave.k / kappa;
  const double q_ratio = f.wave.q / kappa;
  const double lhs = (f.sin_k + k_ratio * f.cos_k) * (f.sin_q + q_ratio * f.cos_q);
  const double rhs = f.decay * f.decay * (f.sin_k - k_ratio * f.cos_k) *
                     (f.sin_q - q_ratio * f.cos_q);
  return lhs - rhs;
}

std::size_t count_levels_below(const PotentialSpec& spec, double e) {
  const double phase = right_wall_phase(spec, e);
  const double nodes = std::ceil(phase / pi) - 1.0;
  return nodes <= 0.0 ? 0 : static_cast<std::size_t>(nodes);
}

std::vector<double> find_levels(const PotentialSpec& spec, std::size_t count,
                                const LevelOptions& options) {
  if (count == 0) throw ValidationError("find_levels: count must be at least 1");
  if (!(spec.v0() > floor_level(spec))) {
    throw DomainError("find_levels: no sub-barrier window (v0 <= max(vL, vR))");
  }
  const double tolerance = std::max(options.tolerance, 0.0);

  const double lo = std::nextafter(floor_level(spec), INFINITY);
  const double hi = spec.v0();
  const std::size_t below_lo = count_levels_below(spec, lo);
  if (below_lo > 0) {
    throw DomainError(
        "find_levels: bound states exist below a well floor; the sub-barrier "
        "piecewise solution does not cover them");
  }
  const std::size_t below_hi = count_levels_below(spec, hi);
  const std::size_t wanted = std::min(count, below_hi);

  std::vector<double> roots(wanted, 0.0);
  std::vector<Bracket> pending{{lo, hi, below_lo, below_hi}};
  while (!pending.empty()) {
    const Bracket br = pending.back();
    pending.pop_back();
    if (br.below_lo >= wanted || br.below_hi == br.below_lo) continue;

    if (br.below_hi - br.below_lo == 1) {
      const std::size_t j = br.below_hi;  // one-based level index
      roots[j - 1] = refine_level(spec, j, br.lo, br.hi, tolerance);
      continue;
    }
    const double mid = midpoint(br.lo, br.hi);
    if (mid <= br.lo || mid >= br.hi) {
      // Several levels inside one ulp: numerically degenerate.
      for (std::size_t j = br.below_lo + 1; j <= std::min(br.below_hi, wanted); ++j) {
        roots[j - 1] = mid;
      }
      continue;
    }
    const std::size_t below_mid = count_levels_below(spec, mid);
    pending.push_back({mid, br.hi, below_mid, br.below_hi});
    pending.push_back({br.lo, mid, br.below_lo, below_mid});
  }

  if (wanted < count) {
    throw PartialResultError("find_levels: only " + std::to_string(wanted) +
                                 " bound states below v0, " +
                                 std::to_string(count) + " requested",
                             std::move(roots));
  }
  return roots;
}

AmplitudeRatioForms amplitude_ratio_forms(const PotentialSpec& spec, double e) {
  const Interface f = interface_at(spec, e);
  const double decaying =
      f.decay * std::abs(f.minus_left) / std::abs(f.plus_right);
  const double growing =
      std::abs(f.plus_left) / (f.decay * std::abs(f.minus_right));
  return {decaying, growing};
}

namespace {

// d/de of kappa sin(k w) +- k cos(k w) for a well whose wavenumber is k.
double plus_minus_slope(double k, double kappa, double w, double sign) {
  const double dk = pi * pi / (2.0 * k);
  const double dkappa = -pi * pi / (2.0 * kappa);
  const double s = std::sin(k * w);
  const double c = std::cos(k * w);
  return dkappa * s + kappa * c * w * dk +
         sign * (dk * c - k * s * w * dk);
}

// Signed D/A with A = 1.
//
// Near a root each closed form has one cancelling factor (plus_right in the
// decaying form, plus_left in the growing form), so an energy error of one
// ulp is amplified by the inverse of that factor. The two forms respond to
// an energy error with log-sensitivities of opposite sign; weighting their
// logarithms by lambda = s_L / (s_L + s_R) removes the first-order error.
// For a symmetric well this is the geometric mean; when one factor is much
// larger it reduces to the form that uses it.
double signed_ratio(const Interface& f, double w) {
  const double decaying = f.decay * f.minus_left / f.plus_right;
  const double growing = f.plus_left / (f.decay * f.minus_right);
  const bool prefer_decaying = std::abs(f.plus_right) >= std::abs(f.plus_left);
  const double first = prefer_decaying ? decaying : growing;
  const double second = prefer_decaying ? growing : decaying;

  double chosen = 0.0;
  if (std::isfinite(first) && (first != 0.0 || !std::isfinite(second))) {
    chosen = first;
  } else if (std::isfinite(second)) {
    chosen = second;
  } else {
    throw NumericalError("amplitude ratio: both closed forms degenerate", 0);
  }
  if (!(std::isfinite(decaying) && std::isfinite(growing)) || decaying == 0.0 ||
      growing == 0.0 || (decaying > 0.0) != (growing > 0.0)) {
    return chosen;
  }

  const auto [k, q, kappa] = f.wave;
  const double s_left = plus_minus_slope(k, kappa, w, 1.0) / f.plus_left;
  const double s_right = plus_minus_slope(q, kappa, w, 1.0) / f.plus_right;
  if (!(std::isfinite(s_left) && std::isfinite(s_right)) ||
      (s_left > 0.0) != (s_right > 0.0)) {
    return chosen;
  }
  const double lambda = s_left / (s_left + s_right);
  const double log_mag = lambda * std::log(std::abs(decaying)) +
                         (1.0 - lambda) * std::log(std::abs(growing));
  return std::copysign(std::exp(log_mag), chosen);
}

}  // namespace

double amplitude_ratio(const PotentialSpec& spec, double e) {
  return std::abs(signed_ratio(interface_at(spec, e), spec.w()));
}

AnalyticState assemble_state(const PotentialSpec& spec, double e) {
  const double residual = quantization_residual(spec, e);
  if (!(std::abs(residual) <= 1e-6)) {
    throw PreconditionError("assemble_state: energy is not an allowed level "
                            "(residual " + std::to_string(residual) + ")");
  }
  const Interface f = interface_at(spec, e);
  const double kappa = f.wave.kappa;

  Amplitudes amp{};
  amp.left = 1.0;
  amp.right = signed_ratio(f, spec.w());
  amp.barrier_fall = f.minus_left / (2.0 * kappa);
  amp.barrier_rise = amp.right * f.minus_right / (2.0 * kappa);

  AnalyticState state{spec, e, f.wave, amp};
  const RegionIntegrals raw = region_integrals(state);
  const double norm = std::sqrt(raw.left + raw.barrier + raw.right);

  const double k = f.wave.k;
  const double q = f.wave.q;
  const double w = spec.w();
  const double right_integral = amp.right * (1.0 - std::cos(q * w)) / q;
  const double left_integral = amp.left * (1.0 - std::cos(k * w)) / k;
  double sign = 1.0;
  if (right_integral < 0.0 || (right_integral == 0.0 && left_integral < 0.0)) {
    sign = -1.0;
  }
  const double scale = sign / norm;
  state.amp.left *= scale;
  state.amp.barrier_rise *= scale;
  state.amp.barrier_fall *= scale;
  state.amp.right *= scale;
  return state;
}

std::vector<AnalyticState> solve_analytic(const PotentialSpec& spec,
                                          std::size_t count,
                                          const LevelOptions& options) {
  const std::vector<double> levels = find_levels(spec, count, options);
  std::vector<AnalyticState> states;
  states.reserve(levels.size());
  for (double e : levels) states.push_back(assemble_state(spec, e));
  return states;
}

double AnalyticState::value(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("position outside the box [0, 1]");
  }
  const double w = spec.w();
  const double xb = spec.right_edge();
  if (x <= w) return amp.left * std::sin(wave.k * x);
  if (x <= xb) {
    return amp.barrier_rise * std::exp(wave.kappa * (x - xb)) +
           amp.barrier_fall * std::exp(-wave.kappa * (x - w));
  }
  return amp.right * std::sin(wave.q * (1.0 - x));
}

double AnalyticState::derivative(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("position outside the box [0, 1]");
  }
  const double w = spec.w();
  const double xb = spec.right_edge();
  if (x <= w) return amp.left * wave.k * std::cos(wave.k * x);
  if (x <= xb) {
    return wave.kappa * (amp.barrier_rise * std::exp(wave.kappa * (x - xb)) -
                         amp.barrier_fall * std::exp(-wave.kappa * (x - w)));
  }
  return -amp.right * wave.q * std::cos(wave.q * (1.0 - x));
}

RegionIntegrals region_integrals(const AnalyticState& state) {
  const double w = state.spec.w();
  const double b = state.spec.b();
  const auto [k, q, kappa] = state.wave;
  const auto& amp = state.amp;

  const double well_k = w / 2.0 - std::sin(2.0 * k * w) / (4.0 * k);
  const double well_q = w / 2.0 - std::sin(2.0 * q * w) / (4.0 * q);
  // integral over [0, b] of exp(-2 kappa s) ds, with the kappa -> 0 limit.
  const double self = kappa * b < 1e-8 ? b : -std::expm1(-2.0 * kappa * b) / (2.0 * kappa);
  const double cross = b * std::exp(-kappa * b);

  return {amp.left * amp.left * well_k,
          (amp.barrier_rise * amp.barrier_rise +
           amp.barrier_fall * amp.barrier_fall) * self +
              2.0 * amp.barrier_rise * amp.barrier_fall * cross,
          amp.right * amp.right * well_q};
}

}  // namespace dwell
