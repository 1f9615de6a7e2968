#include "dwell/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

double SymmetricMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (double x : data_) sum += x * x;
  return std::sqrt(sum);
}

namespace {

// Row-major n x n scratch matrix.
class Square {
 public:
  explicit Square(std::size_t n) : n_(n), data_(n * n) {}
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double* row(std::size_t i) { return data_.data() + i * n_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Householder tridiagonalization. On exit d holds the diagonal, e the
// subdiagonal in e[1..n-1], and v the accumulated orthogonal transform whose
// columns carry the tridiagonal basis.
void tridiagonalize(Square& v, std::vector<double>& d, std::vector<double>& e,
                    std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);

    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate the Householder reflections.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e). When z is non-null its rows
// are the current eigenvector estimates and receive every Givens rotation.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                    Square* z, std::size_t n, std::size_t max_per_value) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  std::size_t total_iterations = 0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iterations = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++iterations > max_per_value) {
        throw NumericalError("tridiagonal QL failed to converge for eigenvalue " +
                                 std::to_string(l),
                             total_iterations + iterations);
      }

      // Wilkinson-style shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));

      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          double* zi = z->row(i);
          double* zi1 = z->row(i + 1);
          for (std::size_t k = 0; k < n; ++k) {
            f = zi1[k];
            zi1[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
    total_iterations += iterations;
  }
}

}  // namespace

EigenDecomposition symmetric_eigen(const SymmetricMatrix& a,
                                   const EigenOptions& options) {
  const std::size_t n = a.order();
  EigenDecomposition out;
  out.order = n;
  if (n == 0) return out;

  Square v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    std::copy(row.begin(), row.end(), v.row(i));
  }
  std::vector<double> d(n), e(n);
  if (n == 1) {
    d[0] = v(0, 0);
    v(0, 0) = 1.0;
  } else {
    tridiagonalize(v, d, e, n);
  }

  // Transpose so that each eigenvector estimate is a contiguous row.
  Square z(n);
  if (options.compute_vectors) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) z(i, k) = v(k, i);
    }
  }
  if (n > 1) {
    tridiagonal_ql(d, e, options.compute_vectors ? &z : nullptr, n,
                   options.max_iterations_per_value);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (options.compute_vectors) {
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      const double* src = z.row(order[k]);
      std::copy(src, src + n, out.vectors.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
  }
  return out;
}

}  // namespace dwell
