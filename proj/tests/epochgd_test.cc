#include "tncopt/epochgd.h"

#include <gtest/gtest.h>

#include <cmath>

namespace tncopt {
namespace {

TEST(ScheduleTest, QuadraticConstants) {
  for (double lambda : {0.25, 1.0, 3.0}) {
    for (double g : {0.5, 1.0, 2.0}) {
      const EpochSchedule s = compute_constants(2.0, lambda, g, 0.1, 100000);
      EXPECT_DOUBLE_EQ(s.c1, 2.0 / lambda);
      EXPECT_DOUBLE_EQ(s.c2, 2.0 * g * g);
    }
  }
}

TEST(ScheduleTest, StepDecayHoldsWithEquality) {
  const EpochSchedule s = compute_constants(2.5, 0.7, 1.3, 0.1, 1 << 20);
  const double g2 = 1.3 * 1.3;
  for (std::size_t e = 0; e + 1 < s.steps.size(); ++e) {
    EXPECT_LE(s.steps[e] * g2, s.c2 * s.steps[e + 1] * (1 + 1e-12));
  }
  EXPECT_LE(s.steps.back() * g2, s.c2 * s.final_step() * (1 + 1e-12));
}

TEST(ScheduleTest, CubicRequirementsHoldPerEpoch) {
  const double k = 3.0, lambda = 1.0, g = 1.0, delta = 0.1;
  const EpochSchedule s = compute_constants(k, lambda, g, delta, 1000000);
  ASSERT_GE(s.epochs, 1);
  const double c2 = g * g * std::pow(2.0, k / (2 * k - 2));
  for (int e = 0; e < s.epochs; ++e) {
    const double eta = s.steps[e];
    const double len = static_cast<double>(s.lengths[e]);
    const double lhs2 = std::pow(c2, 2 / k) * std::pow(eta, 2 / k) /
                        (2 * eta * len * std::pow(lambda, 2 / k));
    EXPECT_LE(lhs2, eta * g * g / 6) << "epoch " << e + 1;
    const double lhs3 = 4 * g * std::pow(c2 * eta / lambda, 1 / k) *
                        std::sqrt(2 * std::log(s.epochs / delta)) / std::sqrt(len);
    EXPECT_LE(lhs3, eta * g * g / 3) << "epoch " << e + 1;
  }
}

TEST(ScheduleTest, EpochStructure) {
  const double k = 1.5, lambda = 0.4;
  const EpochSchedule s = compute_constants(k, lambda, 1.2, 0.2, 200000);
  const double decay = std::pow(2.0, -k / (2 * k - 2));
  EXPECT_EQ(s.c0, static_cast<std::int64_t>(std::ceil(288.0 * std::log(s.epochs / 0.2))));
  std::int64_t total = 0;
  for (int e = 0; e < s.epochs; ++e) {
    EXPECT_EQ(s.lengths[e], s.c0 << (e + 1));
    EXPECT_NEAR(s.radii[e], std::pow(s.c2 * s.steps[e] / lambda, 1 / k), 1e-12);
    if (e > 0) {
      EXPECT_NEAR(s.steps[e] / s.steps[e - 1], decay, 1e-12);
      EXPECT_LT(s.radii[e], s.radii[e - 1]);
    }
    total += s.lengths[e];
  }
  EXPECT_NEAR(s.steps[0], s.c1 * decay, 1e-12);
  EXPECT_EQ(total, s.c0 * ((std::int64_t{2} << s.epochs) - 2));
  EXPECT_LE(total, 200000);
  EXPECT_EQ(s.total_queries(), total);
}

TEST(ScheduleTest, EpochCountIsLargestThatFits) {
  const std::int64_t t = 50000;
  const EpochSchedule s = compute_constants(2.0, 1.0, 1.0, 0.2, t);
  const int e = s.epochs + 1;
  const auto c0_next = static_cast<std::int64_t>(std::ceil(288.0 * std::log(e / 0.2)));
  EXPECT_GT(c0_next * ((std::int64_t{2} << e) - 2), t);
}

TEST(ScheduleTest, RejectsBudgetsBelowOneEpoch) {
  // One epoch needs 2 * ceil(288 ln(1/delta)) queries.
  EXPECT_THROW(compute_constants(2.0, 1.0, 1.0, 0.2, 900), std::invalid_argument);
  EXPECT_NO_THROW(compute_constants(2.0, 1.0, 1.0, 0.2, 928));
}

TEST(ScheduleTest, RejectsBadArguments) {
  EXPECT_THROW(compute_constants(1.0, 1.0, 1.0, 0.2, 10000), std::invalid_argument);
  EXPECT_THROW(compute_constants(2.0, 0.0, 1.0, 0.2, 10000), std::invalid_argument);
  EXPECT_THROW(compute_constants(2.0, 1.0, -1.0, 0.2, 10000), std::invalid_argument);
  EXPECT_THROW(compute_constants(2.0, 1.0, 1.0, 1.0, 10000), std::invalid_argument);
  EXPECT_THROW(compute_constants(2.0, 1.0, 1.0, 0.2, 0), std::invalid_argument);
}

struct RunFixture {
  KappaFunction f;
  ConvexDomain domain;
  StochasticOracle oracle;
  EpochSchedule schedule;
};

RunFixture make_setup(const KappaFunction& f, double sigma, std::int64_t budget, std::uint64_t seed) {
  ConvexDomain domain = ConvexDomain::StandardSet(f.dim());
  OracleConfig oc;
  oc.sigma = sigma;
  oc.budget = budget;
  oc.seed = seed;
  StochasticOracle oracle(f, oc, domain);
  EpochSchedule schedule =
      compute_constants(f.kappa(), f.lambda_growth(), oracle.gradient_bound(), 0.2, budget);
  return {f, domain, std::move(oracle), std::move(schedule)};
}

TEST(RunTest, NoiselessQuadraticConverges) {
  RunFixture s = make_setup(make_f0(2.0, 2), 0.0, 100000, 0);
  Point x0(2);
  x0 << 0.5, 0.5;
  const RunResult r = run(s.oracle, s.domain, s.schedule, x0);
  EXPECT_LE(r.f_error, 1e-4);
  EXPECT_EQ(r.queries_used, s.schedule.total_queries());
  EXPECT_EQ(r.queries_used, s.schedule.c0 * ((std::int64_t{2} << s.schedule.epochs) - 2));
  EXPECT_LE(r.queries_used, 100000);
}

TEST(RunTest, IteratesStayInEpochBall) {
  RunFixture s = make_setup(make_f1(3.0, 2, 0.1, Scaling::kUnitLipschitz), 0.5, 20000, 3);
  std::vector<Point> starts;
  std::vector<double> radii;
  std::int64_t steps = 0;
  int violations = 0;
  RunResult r = run(s.oracle, s.domain, s.schedule, s.domain.center_point(),
                    [&](int epoch, const Point& x) {
                      ++steps;
                      const double radius = s.schedule.radii[epoch - 1];
                      starts.push_back(x);
                      radii.push_back(radius);
                      if (!contains(s.domain, x)) ++violations;
                    });
  EXPECT_EQ(violations, 0);
  EXPECT_EQ(steps, r.queries_used);
  std::size_t i = 0;
  for (int e = 0; e < s.schedule.epochs; ++e) {
    for (std::int64_t t = 0; t < s.schedule.lengths[e]; ++t, ++i) {
      EXPECT_LE((starts[i] - r.trace[e].start).norm(), radii[i] + 1e-9);
    }
  }
  EXPECT_TRUE(contains(s.domain, r.x_hat));
  ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(s.schedule.epochs));
}

TEST(RunTest, PointErrorFollowsFunctionError) {
  for (double k : {1.5, 2.0, 3.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RunFixture s = make_setup(make_f0(k, 2, Scaling::kUnitLipschitz), 0.1, 8192, seed);
      const RunResult r = run(s.oracle, s.domain, s.schedule, s.domain.center_point());
      const double lambda = s.f.lambda_growth();
      EXPECT_LE(r.point_error, std::pow(r.f_error / lambda, 1.0 / k) * (1 + 1e-9) + 1e-15);
    }
  }
}

TEST(RunTest, Preconditions) {
  RunFixture s = make_setup(make_f0(2.0, 2), 0.1, 5000, 0);
  Point outside(2);
  outside << 0.9, 0.9;
  EXPECT_THROW(run(s.oracle, s.domain, s.schedule, outside), std::invalid_argument);

  EpochSchedule too_strong = s.schedule;
  too_strong.lambda = 2.0 * s.f.lambda_growth();
  EXPECT_THROW(run(s.oracle, s.domain, too_strong, s.domain.center_point()), std::invalid_argument);

  OracleConfig oc;
  oc.budget = 100;
  StochasticOracle small(s.f, oc);
  EXPECT_THROW(run(small, s.domain, s.schedule, s.domain.center_point()), std::invalid_argument);
}

TEST(RunTest, DeterministicGivenSeed) {
  RunFixture a = make_setup(make_f0(2.0, 3, Scaling::kUnitLipschitz), 0.3, 4096, 17);
  RunFixture b = make_setup(make_f0(2.0, 3, Scaling::kUnitLipschitz), 0.3, 4096, 17);
  const RunResult ra = run(a.oracle, a.domain, a.schedule, a.domain.center_point());
  const RunResult rb = run(b.oracle, b.domain, b.schedule, b.domain.center_point());
  EXPECT_EQ(ra.x_hat, rb.x_hat);
}

}  // namespace
}  // namespace tncopt
