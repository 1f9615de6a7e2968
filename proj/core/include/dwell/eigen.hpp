#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dwell {

/// Dense symmetric matrix, row-major storage of the full square.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order)
      : order_(order), data_(order * order, 0.0) {}

  std::size_t order() const noexcept { return order_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * order_ + j];
  }

  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * order_ + j] = value;
    data_[j * order_ + i] = value;
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * order_, order_};
  }

  double frobenius_norm() const noexcept;

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

/// Eigenpairs sorted by ascending eigenvalue. Eigenvector k is stored
/// contiguously at vectors[k * order, (k + 1) * order).
struct EigenDecomposition {
  std::size_t order = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // empty when only eigenvalues were requested

  std::span<const double> vector(std::size_t k) const noexcept {
    return {vectors.data() + k * order, order};
  }
};

struct EigenOptions {
  bool compute_vectors = true;
  /// QL sweeps allowed per eigenvalue before giving up.
  std::size_t max_iterations_per_value = 60;
};

/// Householder reduction to tridiagonal form followed by implicit-shift QL.
///
/// An off-diagonal element e_i is deflated once
/// |e_i| <= eps * (|d_i| + |d_{i+1}|), i.e. at machine precision relative to
/// its neighbours. Eigenvalue errors are then bounded by a few eps * ||A||.
/// Throws NumericalError (with the iteration count) if QL fails to converge.
EigenDecomposition symmetric_eigen(const SymmetricMatrix& a,
                                   const EigenOptions& options = {});

}  // namespace dwell
