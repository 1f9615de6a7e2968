#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dwell/errors.hpp"
#include "dwell/toymodel.hpp"

namespace {

// Ground eigenvector of [[eL, -t], [-t, eR]] written out by hand.
double left_weight_oracle(double e_left, double e_right, double t) {
  const double mean = 0.5 * (e_left + e_right);
  const double half = 0.5 * (e_left - e_right);
  const double lower = mean - std::sqrt(half * half + t * t);
  const double a = t;
  const double b = e_left - lower;
  return a * a / (a * a + b * b);
}

}  // namespace

TEST(TwoStateModel, Validation) {
  EXPECT_THROW(dwell::TwoStateModel(0.0, 0.0, 0.0), dwell::ValidationError);
  EXPECT_THROW(dwell::TwoStateModel(0.0, 0.0, -1.0), dwell::ValidationError);
  EXPECT_THROW(dwell::TwoStateModel(NAN, 0.0, 1.0), dwell::ValidationError);
  EXPECT_DOUBLE_EQ(dwell::TwoStateModel(1.0, -1.0, 0.5).delta(), 1.0);
}

TEST(EnergyPair, SplittingFormula) {
  const auto pair = dwell::energy_pair(dwell::TwoStateModel(0.0, 0.0, 0.25));
  EXPECT_DOUBLE_EQ(pair.gap(), 0.5);
  const auto asym = dwell::energy_pair(dwell::TwoStateModel(3.0, -1.0, 1.5));
  EXPECT_NEAR(asym.gap(), 2.0 * std::hypot(2.0, 1.5), 1e-14);
  EXPECT_NEAR(asym.lower + asym.upper, 2.0, 1e-14);
}

TEST(Occupancies, MatchEigenvectorOracle) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> level(-1.0, 1.0);
  std::uniform_real_distribution<double> log_t(-9.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    const double el = level(rng);
    const double er = level(rng);
    const double t = std::pow(10.0, log_t(rng));
    const auto occ = dwell::occupancies(dwell::TwoStateModel(el, er, t));
    EXPECT_NEAR(occ.left, left_weight_oracle(el, er, t), 1e-10);
    EXPECT_EQ(occ.left + occ.right, 1.0);
  }
}

TEST(Occupancies, SymmetricAndLimits) {
  const auto sym = dwell::occupancies_at_ratio(0.0);
  EXPECT_EQ(sym.left, 0.5);
  EXPECT_EQ(sym.right, 0.5);
  // delta > 0 means the right well is lower.
  EXPECT_LT(dwell::occupancies_at_ratio(1e6).left, 1e-12);
  EXPECT_GT(dwell::occupancies_at_ratio(-1e6).left, 1.0 - 1e-12);
  EXPECT_NEAR(dwell::occupancies_at_ratio(0.75).left, 0.2, 1e-15);
}

TEST(FitT, RoundTrip) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> log_ratio(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double t = 6.84e-7;
    const double ratio = std::pow(10.0, log_ratio(rng)) * (i % 2 == 0 ? 1.0 : -1.0);
    const double delta = ratio * t;
    const double p_left = dwell::occupancies(dwell::TwoStateModel(delta, -delta, t)).left;
    if (p_left <= 0.0 || p_left >= 1.0 || p_left == 0.5) continue;
    if (std::abs(ratio) > 50.0) continue;  // p_left saturates; fit loses digits
    EXPECT_NEAR(dwell::fit_t(delta, p_left) / t, 1.0, 1e-12) << ratio;
  }
}

TEST(FitT, Errors) {
  EXPECT_THROW(dwell::fit_t(0.0, 0.3), dwell::InconsistentDataError);
  EXPECT_THROW(dwell::fit_t(1e-6, 0.0), dwell::InconsistentDataError);
  EXPECT_THROW(dwell::fit_t(1e-6, 1.0), dwell::InconsistentDataError);
  EXPECT_THROW(dwell::fit_t(1e-6, 0.7), dwell::InconsistentDataError);
  EXPECT_THROW(dwell::fit_t(-1e-6, 0.3), dwell::InconsistentDataError);
}

TEST(OccupancyCurve, SampledCurve) {
  const std::vector<double> ratios{0.0, 0.75, 2.0};
  const auto curve = dwell::occupancy_curve(1e-7, ratios);
  ASSERT_EQ(curve.p_left.size(), 3u);
  EXPECT_EQ(curve.p_left[0], 0.5);
  EXPECT_NEAR(curve.p_left[1], 0.2, 1e-15);
  EXPECT_NEAR(curve.p_right[1], 0.8, 1e-15);
  EXPECT_THROW(dwell::occupancy_curve(0.0, ratios), dwell::ValidationError);
}

TEST(FitSweep, RecoversSyntheticT) {
  const double t = 1.45e-9;
  std::vector<dwell::SweepPoint> points;
  for (double vr : {0.0, -1e-10, -5e-10, -1e-9, -3e-9, -1e-8, -3e-8}) {
    const double delta = -vr / 2.0;
    points.push_back({delta, dwell::occupancies(dwell::TwoStateModel(0.0, vr, t)).left});
  }
  const auto fit = dwell::fit_sweep(points);
  EXPECT_NEAR(fit.t / t, 1.0, 1e-12);
  EXPECT_LT(fit.max_deviation, 1e-12);
  EXPECT_EQ(fit.overlay.size(), points.size());
  // Reference: minority weight nearest 1/4.
  const double minority = std::min(points[fit.reference].p_left, 1.0 - points[fit.reference].p_left);
  for (const auto& p : points) {
    if (p.delta == 0.0) continue;
    EXPECT_LE(std::abs(minority - 0.25), std::abs(std::min(p.p_left, 1 - p.p_left) - 0.25));
  }
}

TEST(FitSweep, ExplicitReferenceAndErrors) {
  std::vector<dwell::SweepPoint> sym{{0.0, 0.5}, {0.0, 0.5}};
  EXPECT_THROW(dwell::fit_sweep(sym), dwell::InconsistentDataError);
  std::vector<dwell::SweepPoint> pts{{1e-7, 0.4}, {2e-7, 0.3}};
  EXPECT_EQ(dwell::fit_sweep(pts, 0).reference, 0u);
  EXPECT_THROW(dwell::fit_sweep(pts, 5), dwell::ValidationError);
}

TEST(ExponentialEstimate, PaperFactors) {
  const auto e500 = dwell::estimate_t_exponential(dwell::make_symmetric(500.0, 0.2));
  EXPECT_NEAR(e500.factor / 8.6e-7, 1.0, 0.05);
  EXPECT_NEAR(e500.isolated_level, 5.82703478, 1e-7);
  const auto e1000 = dwell::estimate_t_exponential(dwell::make_symmetric(1000.0, 0.2));
  EXPECT_NEAR(e1000.factor / 2.5e-9, 1.0, 0.05);
  EXPECT_THROW(dwell::estimate_t_exponential(dwell::PotentialSpec(500.0, 0.0, -1e-5, 0.2)),
               dwell::PreconditionError);
}
