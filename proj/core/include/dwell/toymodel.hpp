#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dwell/potential.hpp"

namespace dwell {

/// Two isolated well levels coupled by a tunnelling element t:
///   H psi_L = E_L psi_L - t psi_R,   H psi_R = E_R psi_R - t psi_L.
class TwoStateModel {
 public:
  /// Throws ValidationError unless t > 0 and all values are finite.
  TwoStateModel(double e_left, double e_right, double t);

  double e_left() const noexcept { return e_left_; }
  double e_right() const noexcept { return e_right_; }
  double t() const noexcept { return t_; }
  double delta() const noexcept { return (e_left_ - e_right_) / 2.0; }

 private:
  double e_left_;
  double e_right_;
  double t_;
};

struct EnergyPair {
  double lower;
  double upper;
  double gap() const noexcept { return upper - lower; }
};

/// Ground-state weights |c_L|^2 and |c_R|^2.
struct Occupancies {
  double left;
  double right;
};

/// E+- = (E_L + E_R)/2 +- sqrt(delta^2 + t^2).
EnergyPair energy_pair(const TwoStateModel& model);

/// |c_L|^2 = (1 - delta/sqrt(delta^2 + t^2)) / 2 and |c_R|^2 = 1 - |c_L|^2.
/// The smaller weight is evaluated in the cancellation-free form
/// t^2 / (2 s (s + |delta|)), s = sqrt(delta^2 + t^2), so the weights stay
/// accurate deep into the localized tails and sum to one exactly.
Occupancies occupancies(const TwoStateModel& model);

/// Same weights as a function of delta/t alone.
Occupancies occupancies_at_ratio(double delta_over_t);

/// Inverts the occupancy formula for t given the asymmetry delta and a
/// measured left-well weight: t = |delta| * 2 sqrt(p (1 - p)) / |1 - 2p|.
/// Throws InconsistentDataError when delta == 0, when p is not in (0, 1),
/// or when p lies on the wrong side of 1/2 for the sign of delta.
double fit_t(double delta, double p_left);

struct OccupancyCurve {
  double t;
  std::vector<double> ratios;  // delta / t
  std::vector<double> p_left;
  std::vector<double> p_right;
};

/// Throws ValidationError unless t > 0.
OccupancyCurve occupancy_curve(double t, std::span<const double> ratios);

/// One microscopic data point: asymmetry delta = (vL - vR)/2 and the
/// measured left-well weight.
struct SweepPoint {
  double delta;
  double p_left;
};

struct OverlayPoint {
  double delta;
  double delta_over_t;
  double p_left_micro;
  double p_left_toy;
};

struct FitResult {
  double t;
  std::size_t reference;  // index of the point used for the fit
  std::vector<OverlayPoint> overlay;
  double max_deviation;  // max |p_left_micro - p_left_toy|
};

/// Index of the asymmetric point whose minority-well weight is closest to
/// 1/4, where the inversion is best conditioned.
/// Throws InconsistentDataError if no point can be fitted.
std::size_t select_reference(std::span<const SweepPoint> points);

/// Fits t from one reference point and overlays the model on every point.
FitResult fit_sweep(std::span<const SweepPoint> points,
                    std::optional<std::size_t> reference = std::nullopt);

/// Ground level of one isolated well (hard wall on the outside, barrier of
/// height v0 extending to infinity on the inside), the decay constant of
/// its tail and the exponential factor exp(-kappa b) that sets the scale of
/// the tunnelling element.
struct ExponentialEstimate {
  double isolated_level;
  double kappa;
  double factor;
};

/// Solves k cot(k w) = -kappa for the isolated-well ground level by
/// bisection. Throws PreconditionError for an asymmetric spec and
/// DomainError when the isolated well has no bound state below v0.
ExponentialEstimate estimate_t_exponential(const PotentialSpec& spec);

}  // namespace dwell
