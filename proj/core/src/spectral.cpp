#include "dwell/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::sqrt(2.0);

// Integral of phi_n over [lo, hi].
double basis_integral(std::size_t n, double lo, double hi) {
  const double k = pi * static_cast<double>(n);
  return sqrt2 * (std::cos(k * lo) - std::cos(k * hi)) / k;
}

// Flip state k so that its right-well integral is non-negative.
void fix_sign(std::span<double> c, const PotentialSpec& spec) {
  double right = 0.0;
  double left = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    right += c[i] * basis_integral(i + 1, spec.right_edge(), 1.0);
    left += c[i] * basis_integral(i + 1, 0.0, spec.w());
  }
  const bool flip = right < 0.0 || (right == 0.0 && left < 0.0);
  if (flip) {
    for (double& x : c) x = -x;
  }
}

}  // namespace

SpectralState SpectralSolution::state(std::size_t index) const {
  if (index >= energies.size()) {
    throw DomainError("state index " + std::to_string(index) +
                      " outside the spectral solution");
  }
  if (!has_coefficients()) {
    throw DomainError("spectral solution was computed without coefficients");
  }
  return {energies[index],
          std::span<const double>(coefficients).subspan(index * basis_size,
                                                        basis_size)};
}

double box_sinc(double n, double w) noexcept {
  if (n == 0.0) return w;
  return std::sin(pi * n * w) / (pi * n);
}

HamiltonianMatrix build_hamiltonian(const PotentialSpec& spec,
                                    std::size_t basis_size) {
  if (basis_size < 2) throw ValidationError("basis_size must be at least 2");

  const double w = spec.w();
  const double v0 = spec.v0();
  const double vl = spec.vl();
  const double vr = spec.vr();

  SymmetricMatrix h(basis_size);
  for (std::size_t n = 1; n <= basis_size; ++n) {
    const double dn = static_cast<double>(n);
    const double diag = dn * dn + (vl + vr) * w + v0 * spec.b() +
                        (2.0 * v0 - vl - vr) * box_sinc(2.0 * dn, w);
    h.set(n - 1, n - 1, diag);
    for (std::size_t m = n + 1; m <= basis_size; ++m) {
      const double dm = static_cast<double>(m);
      const double overlap = box_sinc(dn - dm, w) - box_sinc(dn + dm, w);
      const double parity = ((n + m) % 2 == 0) ? 1.0 : -1.0;
      h.set(n - 1, m - 1, overlap * ((vl - v0) + (vr - v0) * parity));
    }
  }
  return {spec, std::move(h)};
}

SpectralSolution diagonalize(const HamiltonianMatrix& h,
                             const EigenOptions& options) {
  EigenDecomposition eig = symmetric_eigen(h.entries, options);
  SpectralSolution sol{h.spec, h.order(), std::move(eig.values),
                       std::move(eig.vectors)};
  if (sol.has_coefficients()) {
    for (std::size_t k = 0; k < sol.size(); ++k) {
      fix_sign(std::span<double>(sol.coefficients)
                   .subspan(k * sol.basis_size, sol.basis_size),
               sol.spec);
    }
  }
  return sol;
}

SpectralSolution solve_spectral(const PotentialSpec& spec,
                                std::size_t basis_size,
                                bool with_coefficients) {
  EigenOptions options;
  options.compute_vectors = with_coefficients;
  return diagonalize(build_hamiltonian(spec, basis_size), options);
}

double wavefunction_at(const SpectralState& state, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("position outside the box [0, 1]");
  }
  double psi = 0.0;
  for (std::size_t i = 0; i < state.coefficients.size(); ++i) {
    psi += state.coefficients[i] *
           std::sin(pi * static_cast<double>(i + 1) * x);
  }
  return sqrt2 * psi;
}

std::vector<double> wavefunction_on_grid(const SpectralSolution& sol,
                                         std::size_t state_index,
                                         std::span<const double> grid) {
  const SpectralState state = sol.state(state_index);
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid) out.push_back(wavefunction_at(state, x));
  return out;
}

}  // namespace dwell
