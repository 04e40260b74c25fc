#include "tncopt/functions.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace tncopt {
namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

Point central_difference(const KappaFunction& f, const Point& x, double h = 1e-6) {
  Point g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Point a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f.value(a) - f.value(b)) / (2.0 * h);
  }
  return g;
}

void expect_gradient_matches(const KappaFunction& f, const Point& x) {
  const Point g = f.subgradient(x);
  const Point fd = central_difference(f, x);
  for (int i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(g[i], fd[i], 1e-6 * std::max(1.0, std::abs(fd[i]))) << "coordinate " << i;
  }
}

TEST(FunctionsTest, F0QuadraticExample) {
  const KappaFunction f = make_f0(2.0, 2);
  EXPECT_DOUBLE_EQ(f.c_kappa(), 1.0);
  EXPECT_DOUBLE_EQ(f.lambda_growth(), 1.0);
  EXPECT_NEAR(f.value(P({0.3, 0.4})), 0.25, 1e-15);
  EXPECT_EQ(f.id(), "f0");
}

TEST(FunctionsTest, F0SubQuadraticScale) {
  EXPECT_NEAR(make_f0(1.5, 4).c_kappa(), std::pow(4.0, -0.75), 1e-15);
}

TEST(FunctionsTest, F0AtMinimizer) {
  const KappaFunction f = make_f0(2.0, 2);
  EXPECT_EQ(f.value(Point::Zero(2)), 0.0);
  EXPECT_EQ(f.subgradient(Point::Zero(2)), Point::Zero(2));
  EXPECT_EQ(f.x_star(), Point::Zero(2));
  EXPECT_EQ(f.f_star(), 0.0);
}

TEST(FunctionsTest, F0GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double k : {1.5, 2.0, 3.0}) {
    const KappaFunction f = make_f0(k, 3);
    for (int rep = 0; rep < 30; ++rep) {
      Point x(3);
      for (int i = 0; i < 3; ++i) {
        do x[i] = u(rng);
        while (std::abs(x[i]) < 1e-3);
      }
      expect_gradient_matches(f, x);
    }
  }
}

TEST(FunctionsTest, F0GradientConventionAndOddSymmetry) {
  const KappaFunction f = make_f0(2.5, 2, Scaling::kUnitLipschitz);
  const Point x = P({0.3, -0.6});
  const Point g = f.subgradient(x);
  EXPECT_NEAR(g[1], -2.5 * f.c_kappa() * std::pow(0.6, 1.5), 1e-15);
  EXPECT_EQ(f.subgradient(-x), -g);
}

TEST(FunctionsTest, F1ContinuityAndMinimum) {
  for (double k : {1.5, 2.0, 3.0}) {
    const double a = 0.1;
    const KappaFunction f0 = make_f0(k, 2);
    const KappaFunction f1 = make_f1(k, 2, a);
    const Point seam = P({4.0 * a, 0.0});
    EXPECT_NEAR(f1.value(seam), f0.value(seam), 1e-15);
    const double c2 = std::pow(4.0 * a, k) - std::pow(2.0 * a, k);
    EXPECT_NEAR(f1.value(f1.x_star()), f1.c_kappa() * c2, 1e-15);
    EXPECT_NEAR(f1.f_star(), f1.c_kappa() * c2, 1e-15);
    EXPECT_EQ(f1.x_star(), P({2.0 * a, 0.0}));
    // Beyond the seam f1 coincides with f0.
    const Point beyond = P({0.7, 0.1});
    EXPECT_EQ(f1.value(beyond), f0.value(beyond));
  }
}

TEST(FunctionsTest, F1GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = 0.1;
  for (double k : {1.5, 2.0, 3.0}) {
    const KappaFunction f = make_f1(k, 2, a);
    const int reps = k == 3.0 ? 100 : 50;
    for (int rep = 0; rep < reps; ++rep) {
      Point x(2);
      do {
        x = P({u(rng), u(rng)});
      } while (x.norm() > 1.0 || std::abs(x[0] - 2 * a) < 1e-3 || std::abs(x[0] - 4 * a) < 1e-3 ||
               x[1] < 1e-3);
      expect_gradient_matches(f, x);
    }
  }
}

TEST(FunctionsTest, F1RejectsBadSeparation) {
  EXPECT_THROW(make_f1(2.0, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(make_f1(2.0, 2, -0.1), std::invalid_argument);
  EXPECT_THROW(make_f1(2.0, 2, 0.3), std::invalid_argument);
}

TEST(FunctionsTest, KappaMustExceedOne) {
  EXPECT_THROW(make_f0(1.0, 2), std::invalid_argument);
  EXPECT_THROW(make_f1(0.5, 2, 0.1), std::invalid_argument);
}

TEST(FunctionsTest, HybridPieces) {
  const KappaFunction f = make_hybrid();
  EXPECT_NEAR(f.value(P({0.25})), 0.125, 1e-15);
  EXPECT_NEAR(2.0 * 0.25 * 0.25, 0.25 - 0.125, 1e-15);
  EXPECT_NEAR(f.value(P({0.5})), 0.375, 1e-15);
  EXPECT_NEAR(f.subgradient(P({0.5}))[0], 1.0, 1e-15);
  EXPECT_NEAR(f.value(P({0.3})), 0.175, 1e-15);
  EXPECT_NEAR(f.subgradient(P({0.3}))[0], 1.0, 1e-15);
  EXPECT_NEAR(f.subgradient(P({-0.3}))[0], -1.0, 1e-15);
  EXPECT_NEAR(f.subgradient(P({0.1}))[0], 0.4, 1e-15);
}

TEST(FunctionsTest, HybridGrowthCertificateFromGridSearch) {
  const KappaFunction f = make_hybrid();
  double best = std::numeric_limits<double>::infinity();
  for (int i = -50000; i <= 50000; ++i) {
    if (i == 0) continue;
    const double x = i * 1e-5;
    best = std::min(best, f.value(P({x})) / (x * x));
  }
  EXPECT_NEAR(f.lambda_growth(), best, 1e-9);
}

TEST(FunctionsTest, HybridRejectsPointsOffItsInterval) {
  const KappaFunction f = make_hybrid();
  EXPECT_THROW(f.value(P({0.6})), std::domain_error);
  EXPECT_THROW(f.subgradient(P({-0.51})), std::domain_error);
}

TEST(FunctionsTest, DefaultScalingExceedsUnitGradient) {
  // With c = 1 the quadratic has gradient 2x, of norm 2 on the unit sphere.
  const KappaFunction f = make_f0(2.0, 2);
  const Point x = P({std::sqrt(0.5), std::sqrt(0.5)});
  EXPECT_NEAR(f.subgradient(x).norm(), 2.0, 1e-12);
  EXPECT_NEAR(f.lipschitz(), 2.0, 1e-12);
}

TEST(FunctionsTest, UnitScalingCertificateIsOne) {
  for (double k : {1.5, 2.0, 3.0}) {
    for (int d : {1, 2, 5}) {
      EXPECT_NEAR(make_f0(k, d, Scaling::kUnitLipschitz).lipschitz(), 1.0, 1e-12);
      EXPECT_LE(make_f1(k, d, 0.25, Scaling::kUnitLipschitz).lipschitz(), 1.0 + 1e-12);
    }
  }
}

TEST(FunctionsTest, GrowthConstantAcrossDimensions) {
  EXPECT_DOUBLE_EQ(growth_constant(3.0, 4, 1.0), std::pow(4.0, 1.0 - 1.5));
  EXPECT_DOUBLE_EQ(growth_constant(1.5, 4, 0.5), 0.5);
}

TEST(FunctionsTest, ZooLookup) {
  EXPECT_EQ(make_function("f0", 2.0, 2, 0.1, Scaling::kNominal).kind(), FunctionKind::kPNormPow);
  EXPECT_EQ(make_function("f1", 2.0, 2, 0.1, Scaling::kNominal).kind(),
            FunctionKind::kShiftedPNormPow);
  EXPECT_EQ(make_function("hybrid", 2.0, 1, 0.1, Scaling::kNominal).kind(),
            FunctionKind::kHybridQuadLinear);
  EXPECT_THROW(make_function("f2", 2.0, 2, 0.1, Scaling::kNominal), std::invalid_argument);
}

TEST(FunctionsTest, FreeFunctionsMatchMembers) {
  const KappaFunction f = make_f1(3.0, 2, 0.1);
  const Point x = P({0.15, 0.2});
  EXPECT_EQ(eval(f, x), f.value(x));
  EXPECT_EQ(subgrad(f, x), f.subgradient(x));
}

}  // namespace
}  // namespace tncopt
