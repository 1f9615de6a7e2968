#include "dwell/toymodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dwell/errors.hpp"

namespace dwell {

TwoStateModel::TwoStateModel(double e_left, double e_right, double t)
    : e_left_(e_left), e_right_(e_right), t_(t) {
  if (!std::isfinite(e_left) || !std::isfinite(e_right) || !std::isfinite(t)) {
    throw ValidationError("two-state model parameters must be finite");
  }
  if (!(t > 0.0)) throw ValidationError("tunnelling element t must be positive");
}

EnergyPair energy_pair(const TwoStateModel& model) {
  const double mean = 0.5 * (model.e_left() + model.e_right());
  const double half_gap = std::hypot(model.delta(), model.t());
  return {mean - half_gap, mean + half_gap};
}

namespace {

Occupancies weights(double delta, double t) {
  const double s = std::hypot(delta, t);
  const double minority = t / (2.0 * s) * (t / (s + std::abs(delta)));
  if (delta >= 0.0) return {minority, 1.0 - minority};
  return {1.0 - minority, minority};
}

}  // namespace

Occupancies occupancies(const TwoStateModel& model) {
  return weights(model.delta(), model.t());
}

Occupancies occupancies_at_ratio(double delta_over_t) {
  return weights(delta_over_t, 1.0);
}

double fit_t(double delta, double p_left) {
  if (!std::isfinite(delta) || delta == 0.0) {
    throw InconsistentDataError("fit_t: a symmetric point carries no information on t");
  }
  if (!(p_left > 0.0 && p_left < 1.0)) {
    throw InconsistentDataError("fit_t: left-well weight must lie in (0, 1)");
  }
  if ((delta > 0.0 && p_left >= 0.5) || (delta < 0.0 && p_left <= 0.5)) {
    throw InconsistentDataError(
        "fit_t: the weight is not on the side of 1/2 the asymmetry favours");
  }
  return std::abs(delta) * 2.0 * std::sqrt(p_left * (1.0 - p_left)) /
         std::abs(1.0 - 2.0 * p_left);
}

OccupancyCurve occupancy_curve(double t, std::span<const double> ratios) {
  if (!(t > 0.0)) throw ValidationError("occupancy_curve: t must be positive");
  OccupancyCurve curve{t, {}, {}, {}};
  curve.ratios.assign(ratios.begin(), ratios.end());
  curve.p_left.reserve(ratios.size());
  curve.p_right.reserve(ratios.size());
  for (double r : ratios) {
    const Occupancies occ = occupancies_at_ratio(r);
    curve.p_left.push_back(occ.left);
    curve.p_right.push_back(occ.right);
  }
  return curve;
}

namespace {

bool fittable(const SweepPoint& p) {
  return (p.delta > 0.0 && p.p_left > 0.0 && p.p_left < 0.5) ||
         (p.delta < 0.0 && p.p_left > 0.5 && p.p_left < 1.0);
}

}  // namespace

std::size_t select_reference(std::span<const SweepPoint> points) {
  std::size_t best = points.size();
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!fittable(points[i])) continue;
    const double minority = std::min(points[i].p_left, 1.0 - points[i].p_left);
    const double distance = std::abs(minority - 0.25);
    if (distance < best_distance) {
      best_distance = distance;
      best = i;
    }
  }
  if (best == points.size()) {
    throw InconsistentDataError("cannot fit: no asymmetric point with a usable weight");
  }
  return best;
}

FitResult fit_sweep(std::span<const SweepPoint> points,
                    std::optional<std::size_t> reference) {
  const std::size_t ref = reference.value_or(select_reference(points));
  if (ref >= points.size()) throw ValidationError("fit_sweep: reference out of range");

  FitResult result{fit_t(points[ref].delta, points[ref].p_left), ref, {}, 0.0};
  result.overlay.reserve(points.size());
  for (const SweepPoint& p : points) {
    const double ratio = p.delta / result.t;
    const double toy = occupancies_at_ratio(ratio).left;
    result.overlay.push_back({p.delta, ratio, p.p_left, toy});
    result.max_deviation = std::max(result.max_deviation, std::abs(p.p_left - toy));
  }
  return result;
}

ExponentialEstimate estimate_t_exponential(const PotentialSpec& spec) {
  if (!spec.symmetric()) {
    throw PreconditionError("estimate_t_exponential needs a symmetric well");
  }
  constexpr double pi = std::numbers::pi;
  const double w = spec.w();
  const double floor = spec.vl();
  const double v0 = spec.v0();

  // The ground level has k w in (pi/2, pi).
  double lo = floor + 1.0 / (4.0 * w * w);
  double hi = std::min(floor + 1.0 / (w * w), v0);
  if (!(v0 > lo)) {
    throw DomainError("isolated well has no bound state below v0");
  }
  const auto matching = [&](double e) {
    const double k = pi * std::sqrt(e - floor);
    const double kappa = pi * std::sqrt(std::max(v0 - e, 0.0));
    return kappa * std::sin(k * w) + k * std::cos(k * w);
  };
  // matching(lo) > 0 and matching(hi) < 0.
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (matching(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double level = lo + 0.5 * (hi - lo);
  const double kappa = pi * std::sqrt(v0 - level);
  return {level, kappa, std::exp(-kappa * spec.b())};
}

}  // namespace dwell
