#include "tncopt/lowerbound.h"

#include <gtest/gtest.h>

#include <cmath>

namespace tncopt {
namespace {

TEST(KlTest, QuadraticGradientGapIsConstant) {
  const double k = 2.0, a = 0.05, sigma = 0.7;
  const std::int64_t t = 1000;
  for (double c : {0.5, 1.0}) {
    const double scale = t / (2 * sigma * sigma);
    const double m_g = (kl_first_order(k, c, a, sigma, t) - kl_zeroth_order(k, c, a, sigma, t)) / scale;
    EXPECT_NEAR(m_g, std::pow(2 * k * c * a, 2), 1e-12);
  }
}

TEST(KlTest, ValueGapMatchesDirectMaximum) {
  // Independent evaluation of max over [0, 4a] of the squared value gap.
  const double k = 3.0, a = 0.02, c = 0.3, sigma = 1.0;
  const double c2 = std::pow(4 * a, k) - std::pow(2 * a, k);
  double best = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double x = 4 * a * i / 100000.0;
    const double gap = c * (std::pow(std::abs(x - 2 * a), k) + c2 - std::pow(x, k));
    best = std::max(best, gap * gap);
  }
  EXPECT_NEAR(kl_zeroth_order(k, c, a, sigma, 2), best, 1e-12 * best + 1e-300);
}

TEST(KlTest, SeparationScalingRatios) {
  for (double k : {1.5, 2.0, 3.0}) {
    const double a = 1e-4;
    const double first = kl_first_order(k, 2, 2 * a, 1.0, 100) / kl_first_order(k, 2, a, 1.0, 100);
    EXPECT_NEAR(first, std::pow(2.0, 2 * k - 2), 0.01 * std::pow(2.0, 2 * k - 2)) << k;
    const double zero = kl_zeroth_order(k, 2, 2 * a, 1.0, 100) / kl_zeroth_order(k, 2, a, 1.0, 100);
    EXPECT_NEAR(zero, std::pow(2.0, 2 * k), 0.01 * std::pow(2.0, 2 * k)) << k;
  }
}

TEST(KlTest, MatchedSeparationKeepsKlBounded) {
  for (double k : {1.5, 2.0, 3.0}) {
    double lo = INFINITY, hi = 0.0;
    for (int p = 10; p <= 22; p += 2) {
      const auto t = std::int64_t{1} << p;
      const double a = std::pow(static_cast<double>(t), -1.0 / (2 * k - 2));
      if (4 * a > 1) continue;
      const double kl = kl_first_order(k, 2, a, 1.0, t);
      lo = std::min(lo, kl);
      hi = std::max(hi, kl);
    }
    EXPECT_LT(hi / lo, 1.5) << k;

    lo = INFINITY, hi = 0.0;
    for (int p = 10; p <= 22; p += 2) {
      const auto t = std::int64_t{1} << p;
      const double a = std::pow(static_cast<double>(t), -1.0 / (2 * k));
      if (4 * a > 1) continue;
      const double kl = kl_zeroth_order(k, 2, a, 1.0, t);
      lo = std::min(lo, kl);
      hi = std::max(hi, kl);
    }
    EXPECT_LT(hi / lo, 1.5) << k;
  }
}

TEST(KlTest, ZerothOrderIsNegligibleForSmallSeparation) {
  double previous = INFINITY;
  for (double a : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double ratio = kl_zeroth_order(2.0, 2, a, 1.0, 100) / kl_first_order(2.0, 2, a, 1.0, 100);
    EXPECT_LT(ratio, previous);
    previous = ratio;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(KlTest, RejectsBadSeparation) {
  EXPECT_THROW(kl_first_order(2.0, 2, 0.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(kl_first_order(2.0, 2, 0.3, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(kl_zeroth_order(2.0, 2, 0.1, 0.0, 10), std::invalid_argument);
}

TEST(FanoTest, Examples) {
  EXPECT_DOUBLE_EQ(fano_bound(0.0), 0.5);
  EXPECT_NEAR(fano_bound(2.0), std::exp(-2.0) / 4, 1e-15);
  EXPECT_NEAR(fano_bound(2.0), 0.0338, 5e-5);
  EXPECT_NEAR(fano_bound(0.5), 0.25, 1e-15);
  EXPECT_THROW(fano_bound(-1.0), std::invalid_argument);
}

TEST(IndistinguishabilityTest, NoiselessRunsAreNeverConfused) {
  IndistinguishabilityConfig cfg;
  cfg.sigma = 0.0;
  cfg.budget = 4096;
  cfg.trials = 100;
  const IndistinguishabilityResult r = indistinguishability_experiment(cfg);
  EXPECT_EQ(r.misidentification_rate, 0.0);
  EXPECT_EQ(r.runs, 200);
}

TEST(IndistinguishabilityTest, NoisyPointErrorExceedsQuarterSeparation) {
  IndistinguishabilityConfig cfg;
  cfg.sigma = 1.0;
  cfg.budget = 4096;
  cfg.trials = 100;
  cfg.seed = 3;
  const IndistinguishabilityResult r = indistinguishability_experiment(cfg);
  EXPECT_DOUBLE_EQ(r.a, 1.0 / 64.0);
  EXPECT_GE(r.mean_point_error, 0.25 * r.a);
  EXPECT_GE(r.mean_point_error, r.a * r.fano);
}

TEST(IndistinguishabilityTest, WiderSeparationIsEasierToTell) {
  IndistinguishabilityConfig narrow;
  // At sigma = 1 the noise floor hides both separations; 0.3 resolves the wide one.
  narrow.sigma = 0.3;
  narrow.budget = 4096;
  narrow.trials = 100;
  IndistinguishabilityConfig wide = narrow;
  wide.separation = 10.0 / 64.0;
  const double narrow_rate = indistinguishability_experiment(narrow).misidentification_rate;
  const double wide_rate = indistinguishability_experiment(wide).misidentification_rate;
  EXPECT_LT(wide_rate, narrow_rate);
}

TEST(IndistinguishabilityTest, NeedsOneHundredTrials) {
  IndistinguishabilityConfig cfg;
  cfg.trials = 99;
  EXPECT_THROW(indistinguishability_experiment(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace tncopt
