#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dwell/eigen.hpp"
#include "dwell/errors.hpp"

using dwell::SymmetricMatrix;

namespace {

SymmetricMatrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, dist(rng));
  }
  return a;
}

double residual(const SymmetricMatrix& a, double lambda, std::span<const double> v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i) {
    double s = -lambda * v[i];
    for (std::size_t j = 0; j < a.order(); ++j) s += a(i, j) * v[j];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace

TEST(SymmetricMatrix, SetWritesBothTriangles) {
  SymmetricMatrix a(3);
  a.set(0, 2, 5.0);
  EXPECT_EQ(a(2, 0), 5.0);
  EXPECT_EQ(a(0, 2), 5.0);
  EXPECT_DOUBLE_EQ(a.frobenius_norm(), std::sqrt(50.0));
}

TEST(SymmetricEigen, TwoByTwo) {
  SymmetricMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 2.0);
  a.set(0, 1, 1.0);
  const auto d = dwell::symmetric_eigen(a);
  EXPECT_NEAR(d.values[0], 1.0, 1e-15);
  EXPECT_NEAR(d.values[1], 3.0, 1e-15);
  EXPECT_NEAR(std::abs(d.vector(0)[0]), std::sqrt(0.5), 1e-15);
}

TEST(SymmetricEigen, DiagonalInput) {
  SymmetricMatrix a(4);
  const double diag[] = {3.0, -1.0, 7.0, 0.5};
  for (std::size_t i = 0; i < 4; ++i) a.set(i, i, diag[i]);
  const auto d = dwell::symmetric_eigen(a);
  EXPECT_EQ(d.values, (std::vector<double>{-1.0, 0.5, 3.0, 7.0}));
}

TEST(SymmetricEigen, OrderOne) {
  SymmetricMatrix a(1);
  a.set(0, 0, 4.5);
  const auto d = dwell::symmetric_eigen(a);
  ASSERT_EQ(d.values.size(), 1u);
  EXPECT_EQ(d.values[0], 4.5);
  EXPECT_EQ(std::abs(d.vector(0)[0]), 1.0);
}

TEST(SymmetricEigen, RandomMatricesProperties) {
  std::mt19937 rng(20240611);
  for (std::size_t n : {2u, 3u, 5u, 17u, 64u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_matrix(n, rng);
      const auto d = dwell::symmetric_eigen(a);
      const double scale = a.frobenius_norm();
      ASSERT_TRUE(std::is_sorted(d.values.begin(), d.values.end()));

      double trace = 0.0;
      double sum = 0.0;
      double sum_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trace += a(i, i);
        sum += d.values[i];
        sum_sq += d.values[i] * d.values[i];
      }
      EXPECT_NEAR(trace, sum, 1e-12 * scale * n);
      EXPECT_NEAR(std::sqrt(sum_sq), scale, 1e-12 * scale * n);

      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_LT(residual(a, d.values[k], d.vector(k)), 1e-12 * scale * n);
        for (std::size_t l = k; l < n; ++l) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += d.vector(k)[i] * d.vector(l)[i];
          EXPECT_NEAR(dot, k == l ? 1.0 : 0.0, 1e-12 * n);
        }
      }
    }
  }
}

TEST(SymmetricEigen, ValuesOnlyMatchesFull) {
  std::mt19937 rng(7);
  const auto a = random_matrix(40, rng);
  const auto full = dwell::symmetric_eigen(a);
  const auto values = dwell::symmetric_eigen(a, {.compute_vectors = false});
  ASSERT_EQ(values.values.size(), full.values.size());
  EXPECT_TRUE(values.vectors.empty());
  for (std::size_t i = 0; i < full.values.size(); ++i) {
    EXPECT_NEAR(values.values[i], full.values[i], 1e-12);
  }
}

TEST(SymmetricEigen, ReportsNonConvergence) {
  std::mt19937 rng(3);
  const auto a = random_matrix(30, rng);
  try {
    dwell::symmetric_eigen(a, {.compute_vectors = false, .max_iterations_per_value = 0});
    FAIL() << "expected NumericalError";
  } catch (const dwell::NumericalError& e) {
    EXPECT_EQ(e.iterations(), 1u);
  }
}
