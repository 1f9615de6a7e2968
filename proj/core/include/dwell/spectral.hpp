#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dwell/eigen.hpp"
#include "dwell/potential.hpp"

namespace dwell {

/// Default number of box states phi_n(x) = sqrt(2) sin(n pi x), n = 1..N.
inline constexpr std::size_t kDefaultBasisSize = 400;

/// Hamiltonian in the infinite-box basis, in units of E1.
///
/// Built from the upper triangle so H(n, m) == H(m, n) holds bitwise.
/// Carries the potential it was built from so that diagonalize() can fix
/// eigenvector signs against the well geometry.
struct HamiltonianMatrix {
  PotentialSpec spec;
  SymmetricMatrix entries;

  std::size_t order() const noexcept { return entries.order(); }
  /// Element for one-based basis indices n, m.
  double element(std::size_t n, std::size_t m) const noexcept {
    return entries(n - 1, m - 1);
  }
};

/// One eigenstate of a SpectralSolution; views the solution's storage.
struct SpectralState {
  double energy;
  std::span<const double> coefficients;  // c_n for n = 1..N
};

struct SpectralSolution {
  PotentialSpec spec;
  std::size_t basis_size = 0;
  std::vector<double> energies;       // ascending
  std::vector<double> coefficients;   // state k at [k * N, (k + 1) * N)

  bool has_coefficients() const noexcept { return !coefficients.empty(); }
  std::size_t size() const noexcept { return energies.size(); }

  /// Throws DomainError when the index is out of range or coefficients were
  /// not computed.
  SpectralState state(std::size_t index) const;
};

/// sin(pi n w) / (pi n), with the n = 0 limit w.
double box_sinc(double n, double w) noexcept;

/// Matrix elements in closed form:
///   H_nn = n^2 + (vL + vR) w + v0 b + (2 v0 - vL - vR) sinc(2n)
///   H_nm = D_nm [ (vL - v0) + (vR - v0) (-1)^(n+m) ],   n != m
/// with D_nm = sinc(n - m) - sinc(n + m). Throws ValidationError for
/// basis_size < 2.
HamiltonianMatrix build_hamiltonian(const PotentialSpec& spec,
                                    std::size_t basis_size);

/// Eigen-decomposition of h, ascending. Each eigenvector's sign is chosen so
/// that the integral of psi over the right well is non-negative (ties go to
/// the left well).
///
/// Eigenvalue accuracy is about 10 * eps * ||H|| with ||H|| ~ N^2; size N
/// against the smallest splitting that must be resolved. Note that basis
/// truncation error (decaying like N^-3 for square wells) is usually the
/// larger of the two.
SpectralSolution diagonalize(const HamiltonianMatrix& h,
                             const EigenOptions& options = {});

/// build_hamiltonian followed by diagonalize.
SpectralSolution solve_spectral(const PotentialSpec& spec,
                                std::size_t basis_size = kDefaultBasisSize,
                                bool with_coefficients = true);

/// psi(x) = sum_n c_n sqrt(2) sin(n pi x). Throws DomainError outside [0, 1].
double wavefunction_at(const SpectralState& state, double x);

/// psi on each grid point of state `state_index`.
std::vector<double> wavefunction_on_grid(const SpectralSolution& sol,
                                         std::size_t state_index,
                                         std::span<const double> grid);

}  // namespace dwell
