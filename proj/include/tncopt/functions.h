// Test functions with certified growth: f(x) - f* >= lambda_growth * ||x - x*||^kappa.
//
// The growth constant is stored without the factor 1/2 that appears in some
// statements of the growth condition; a condition written as
// (lambda/2)||x - x*||^kappa corresponds to lambda_growth = lambda / 2.

#pragma once

#include <string>
#include <string_view>

#include "tncopt/geometry.h"

namespace tncopt {

enum class FunctionKind { kPNormPow, kShiftedPNormPow, kHybridQuadLinear };

// How the normalizing constant c_kappa is chosen.
//   kNominal:        c = 1 for kappa >= 2, c = d^{-kappa/2} for kappa < 2.
//   kUnitLipschitz:  c chosen so that ||g|| <= 1 on [0,1]^d ∩ unit ball.
enum class Scaling { kNominal, kUnitLipschitz };

class KappaFunction {
 public:
  FunctionKind kind() const { return kind_; }
  // "f0", "f1" or "hybrid".
  std::string id() const;

  double kappa() const { return kappa_; }
  int dim() const { return dim_; }
  double c_kappa() const { return c_kappa_; }
  double lambda_growth() const { return lambda_growth_; }
  // Certified bound on ||g(x)|| over [0,1]^d ∩ unit ball (hybrid: over [-1/2, 1/2]).
  double lipschitz() const { return lipschitz_; }
  // Separation parameter a of the shifted function (0 otherwise).
  double shift() const { return shift_; }
  const Point& x_star() const { return x_star_; }
  double f_star() const { return f_star_; }

  double value(const Point& x) const;
  Point subgradient(const Point& x) const;
  // Allocation-free variant for hot loops; `out` must already have size dim().
  void subgradient_into(const Point& x, Point& out) const;

 private:
  friend KappaFunction make_f0(double kappa, int d, double c_kappa);
  friend KappaFunction make_f1(double kappa, int d, double a, double c_kappa);
  friend KappaFunction make_hybrid();

  KappaFunction() = default;
  void check_point(const Point& x) const;

  FunctionKind kind_ = FunctionKind::kPNormPow;
  double kappa_ = 2.0;
  int dim_ = 1;
  double c_kappa_ = 1.0;
  double lambda_growth_ = 1.0;
  double lipschitz_ = 1.0;
  double shift_ = 0.0;
  double c2_ = 0.0;  // continuity offset of the shifted piece
  Point x_star_;
  double f_star_ = 0.0;
};

double eval(const KappaFunction& f, const Point& x);
Point subgrad(const KappaFunction& f, const Point& x);

// c_kappa from the normalization used in the growth argument for ||x||_kappa^kappa.
double nominal_scale(double kappa, int d);
// c_kappa giving a unit Lipschitz constant on S*. With `shifted_pair` the
// constant also covers f1 for every admissible separation (4a <= 1).
double unit_lipschitz_scale(double kappa, int d, bool shifted_pair = false);
// lambda_growth of c * ||x||_kappa^kappa measured in the Euclidean norm.
double growth_constant(double kappa, int d, double c_kappa);

// f0(x) = c * sum_i |x_i|^kappa, minimized at 0.
KappaFunction make_f0(double kappa, int d, Scaling scaling = Scaling::kNominal);
KappaFunction make_f0(double kappa, int d, double c_kappa);

// f1(x) = c * (||x - 2a e_1||_kappa^kappa + c2) for x_1 <= 4a and f0(x)
// otherwise, with c2 = (4a)^kappa - (2a)^kappa making the pieces meet.
KappaFunction make_f1(double kappa, int d, double a, Scaling scaling = Scaling::kNominal);
KappaFunction make_f1(double kappa, int d, double a, double c_kappa);

// 1-D: 2x^2 on |x| <= 1/4, |x| - 1/8 beyond, on [-1/2, 1/2]. Quadratic growth
// with lambda_growth = 3/2, but only linear away from the origin.
KappaFunction make_hybrid();

// Zoo lookup by id ("f0", "f1", "hybrid").
KappaFunction make_function(std::string_view id, double kappa, int d, double a,
                            Scaling scaling);

}  // namespace tncopt
