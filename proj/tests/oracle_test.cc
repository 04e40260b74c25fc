#include "tncopt/oracle.h"

#include <gtest/gtest.h>

#include <cmath>

namespace tncopt {
namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

OracleConfig config(double sigma, std::int64_t budget, std::uint64_t seed = 1) {
  OracleConfig c;
  c.sigma = sigma;
  c.budget = budget;
  c.seed = seed;
  return c;
}

TEST(OracleTest, ZeroNoiseIsExact) {
  const KappaFunction f = make_f0(2.0, 2);
  StochasticOracle oracle(f, config(0.0, 5));
  const Point x = P({0.3, 0.4});
  const OracleResponse r = oracle.query(x);
  EXPECT_EQ(r.value_hat, f.value(x));
  ASSERT_TRUE(r.grad_hat.has_value());
  EXPECT_EQ(*r.grad_hat, f.subgradient(x));
  EXPECT_EQ(r.queries_remaining, 4);
}

TEST(OracleTest, MonteCarloMeanIsUnbiased) {
  const KappaFunction f = make_f0(2.0, 2);
  const int n = 10000;
  const double sigma = 1.0;
  StochasticOracle oracle(f, config(sigma, n, 99));
  const Point x = P({0.3, 0.4});
  double value = 0.0;
  Point grad = Point::Zero(2);
  for (int i = 0; i < n; ++i) {
    const OracleResponse r = oracle.query(x);
    value += r.value_hat;
    grad += *r.grad_hat;
  }
  const double tol = 4.0 * sigma / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(value / n, f.value(x), tol);
  const Point g = f.subgradient(x);
  EXPECT_NEAR(grad[0] / n, g[0], tol);
  EXPECT_NEAR(grad[1] / n, g[1], tol);
}

TEST(OracleTest, BudgetIsEnforced) {
  const KappaFunction f = make_f0(2.0, 2);
  StochasticOracle oracle(f, config(0.1, 3));
  for (int i = 0; i < 3; ++i) oracle.query(P({0.1, 0.1}));
  EXPECT_THROW(oracle.query(P({0.1, 0.1})), BudgetExhausted);
  EXPECT_EQ(oracle.queries_used(), 3);
  EXPECT_EQ(oracle.queries_remaining(), 0);
}

TEST(OracleTest, ZerothOrderHasNoGradient) {
  const KappaFunction f = make_f0(2.0, 2);
  OracleConfig c = config(0.1, 3);
  c.order = OracleOrder::kZeroth;
  StochasticOracle oracle(f, c);
  EXPECT_FALSE(oracle.query(P({0.1, 0.1})).grad_hat.has_value());
  Point g(2);
  EXPECT_THROW(oracle.query_into(P({0.1, 0.1}), g), std::logic_error);
}

TEST(OracleTest, SameSeedSameResponses) {
  const KappaFunction f = make_f1(2.0, 2, 0.1);
  StochasticOracle a(f, config(0.5, 50, 7));
  StochasticOracle b(f, config(0.5, 50, 7));
  StochasticOracle c(f, config(0.5, 50, 8));
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const Point x = P({0.01 * i, 0.2});
    const OracleResponse ra = a.query(x), rb = b.query(x), rc = c.query(x);
    EXPECT_EQ(ra.value_hat, rb.value_hat);
    EXPECT_EQ(*ra.grad_hat, *rb.grad_hat);
    differs = differs || ra.value_hat != rc.value_hat;
  }
  EXPECT_TRUE(differs);
}

TEST(OracleTest, ClippingBoundsGradientNorm) {
  const KappaFunction f = make_f0(2.0, 3);
  OracleConfig c = config(5.0, 2000);
  c.clip_g = 2.0;
  StochasticOracle oracle(f, c);
  for (int i = 0; i < 2000; ++i) {
    EXPECT_LE(oracle.query(P({0.5, 0.5, 0.5})).grad_hat->norm(), 2.0 + 1e-12);
  }
  EXPECT_EQ(oracle.gradient_bound(), 2.0);
}

TEST(OracleTest, DefaultClipLevel) {
  const KappaFunction f = make_f0(2.0, 4, Scaling::kUnitLipschitz);
  StochasticOracle oracle(f, config(0.5, 1));
  EXPECT_NEAR(oracle.gradient_bound(), 1.0 + 3.0 * 0.5 * 2.0, 1e-12);
}

TEST(OracleTest, SphereNoiseHasExactMagnitude) {
  const KappaFunction f = make_f0(2.0, 3);
  OracleConfig c = config(0.3, 100);
  c.noise = NoiseModel::kSphereBounded;
  StochasticOracle oracle(f, c);
  const Point x = P({0.2, 0.1, 0.4});
  for (int i = 0; i < 100; ++i) {
    const OracleResponse r = oracle.query(x);
    EXPECT_NEAR((*r.grad_hat - f.subgradient(x)).norm(), 0.3, 1e-12);
    EXPECT_NEAR(std::abs(r.value_hat - f.value(x)), 0.3, 1e-12);
  }
  EXPECT_NEAR(oracle.gradient_bound(), f.lipschitz() + 0.3, 1e-12);
}

TEST(OracleTest, RejectsQueriesOutsideDomain) {
  const KappaFunction f = make_f0(2.0, 2);
  StochasticOracle oracle(f, config(0.1, 5), ConvexDomain::StandardSet(2));
  EXPECT_THROW(oracle.query(P({0.9, 0.9})), std::domain_error);
  EXPECT_NO_THROW(oracle.query(P({0.5, 0.5})));
}

TEST(OracleTest, RejectsBadConfig) {
  const KappaFunction f = make_f0(2.0, 2);
  EXPECT_THROW(StochasticOracle(f, config(-1.0, 5)), std::invalid_argument);
  EXPECT_THROW(StochasticOracle(f, config(1.0, 0)), std::invalid_argument);
}

TEST(OracleTest, ParsesNames) {
  EXPECT_EQ(parse_order("first"), OracleOrder::kFirst);
  EXPECT_EQ(parse_order("zeroth"), OracleOrder::kZeroth);
  EXPECT_EQ(parse_noise_model("sphere-bounded"), NoiseModel::kSphereBounded);
  EXPECT_THROW(parse_noise_model("gauss"), std::invalid_argument);
  EXPECT_EQ(to_string(NoiseModel::kGaussianClipped), "gaussian-clipped");
}

double standard_normal_mass(double t) { return 0.5 * std::erf(t / std::sqrt(2.0)); }

TEST(GaussianMassTest, SandwichAtHalfSigma) {
  const MassBounds b = gaussian_mass_bounds(1.0, 0.5);
  EXPECT_NEAR(b.lower, 0.120985, 5e-6);
  EXPECT_NEAR(b.upper, 0.19947, 5e-6);
  const double mass = standard_normal_mass(0.5);
  EXPECT_NEAR(mass, 0.19146, 5e-6);
  EXPECT_LE(b.lower, mass);
  EXPECT_LE(mass, b.upper);
}

TEST(GaussianMassTest, VanishAtZero) {
  const MassBounds b = gaussian_mass_bounds(1.0, 1e-12);
  EXPECT_LT(b.lower, 1e-11);
  EXPECT_LT(b.upper, 1e-11);
}

TEST(GaussianMassTest, ScaleEquivariance) {
  const MassBounds b = gaussian_mass_bounds(2.0, 1.0);
  const double two_pi = 2.0 * 3.14159265358979323846;
  EXPECT_NEAR(b.lower, 0.5 / std::sqrt(two_pi * std::exp(1.0)), 1e-15);
  EXPECT_NEAR(b.upper, 0.5 / std::sqrt(two_pi), 1e-15);
  const MassBounds c = gaussian_mass_bounds(1.0, 0.5);
  EXPECT_NEAR(gaussian_mass_bounds(2.0, 1.0).lower, c.lower, 1e-15);
}

TEST(GaussianMassTest, RejectsTAtOrAboveSigma) {
  EXPECT_THROW(gaussian_mass_bounds(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(gaussian_mass_bounds(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(gaussian_mass_bounds(0.0, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace tncopt
