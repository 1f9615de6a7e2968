#pragma once

#include <istream>
#include <string_view>

namespace dwell {

/// Asymmetric square double well inside an infinite box.
///
/// Energies are in units of the empty-box ground energy
/// E1 = pi^2 hbar^2 / (2 m a^2) and lengths in units of the box width a, so
/// the Schroedinger equation reads -(1/pi^2) psi'' + v(x) psi = e psi on
/// [0, 1]. The left well occupies [0, w), the barrier [w, w + b] and the
/// right well (w + b, 1], with w = (1 - b) / 2.
class PotentialSpec {
 public:
  /// Throws ValidationError unless 0 < b < 1 and v0 >= max(vl, vr).
  ///
  /// v0 == max(vl, vr) is accepted so that the empty box (all levels zero)
  /// can be represented; the analytic solver additionally requires bound
  /// states strictly below v0.
  PotentialSpec(double v0, double vl, double vr, double b);

  double v0() const noexcept { return v0_; }
  double vl() const noexcept { return vl_; }
  double vr() const noexcept { return vr_; }
  double b() const noexcept { return b_; }

  double w() const noexcept { return (1.0 - b_) / 2.0; }
  /// Left edge of the right well.
  double right_edge() const noexcept { return w() + b_; }
  double delta() const noexcept { return (vl_ - vr_) / 2.0; }
  bool symmetric() const noexcept { return vl_ == vr_; }

  /// Same geometry with the two well floors exchanged.
  PotentialSpec mirrored() const { return {v0_, vr_, vl_, b_}; }
  PotentialSpec with_vr(double vr) const { return {v0_, vl_, vr, b_}; }

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

 private:
  double v0_;
  double vl_;
  double vr_;
  double b_;
};

/// Potential at x. The barrier owns both of its edges.
/// Throws DomainError for x outside [0, 1] (the infinite walls).
double evaluate(const PotentialSpec& spec, double x);

/// Symmetric well with both floors at zero.
PotentialSpec make_symmetric(double v0, double b);

/// Reads `key = value` lines with keys v0, vL, vR, b. Blank lines and lines
/// starting with '#' are ignored. v0 and b are required; vL and vR default
/// to zero.
PotentialSpec parse_potential_config(std::istream& in);
PotentialSpec parse_potential_config(std::string_view text);

}  // namespace dwell
