#include "tncopt/functions.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tncopt {
namespace {

constexpr double kHybridHalfWidth = 0.5;
constexpr double kHybridKnot = 0.25;

double signed_pow(double v, double p) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), p), v);
}

void check_kappa(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be > 1, got " + std::to_string(kappa));
  }
}

void check_dim(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

// max over [0,1]^d ∩ unit ball of sum_i x_i^{2kappa-2}.
double max_gradient_mass(double kappa, int d) {
  return kappa >= 2.0 ? 1.0 : std::pow(static_cast<double>(d), 2.0 - kappa);
}

}  // namespace

std::string KappaFunction::id() const {
  switch (kind_) {
    case FunctionKind::kPNormPow:
      return "f0";
    case FunctionKind::kShiftedPNormPow:
      return "f1";
    case FunctionKind::kHybridQuadLinear:
      return "hybrid";
  }
  return "unknown";
}

void KappaFunction::check_point(const Point& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("dimension mismatch: function has d=" + std::to_string(dim_) +
                                ", point has d=" + std::to_string(x.size()));
  }
  if (kind_ == FunctionKind::kHybridQuadLinear && std::abs(x[0]) > kHybridHalfWidth + 1e-12) {
    throw std::domain_error("hybrid function is defined on [-1/2, 1/2], got x = " +
                            std::to_string(x[0]));
  }
}

double KappaFunction::value(const Point& x) const {
  check_point(x);
  switch (kind_) {
    case FunctionKind::kPNormPow:
      return c_kappa_ * x.array().abs().pow(kappa_).sum();
    case FunctionKind::kShiftedPNormPow: {
      if (x[0] > 4.0 * shift_) return c_kappa_ * x.array().abs().pow(kappa_).sum();
      return c_kappa_ * ((x - x_star_).array().abs().pow(kappa_).sum() + c2_);
    }
    case FunctionKind::kHybridQuadLinear: {
      const double v = std::abs(x[0]);
      return v <= kHybridKnot ? 2.0 * v * v : v - 0.125;
    }
  }
  return 0.0;
}

void KappaFunction::subgradient_into(const Point& x, Point& out) const {
  check_point(x);
  switch (kind_) {
    case FunctionKind::kPNormPow:
      for (int i = 0; i < dim_; ++i) out[i] = kappa_ * c_kappa_ * signed_pow(x[i], kappa_ - 1.0);
      return;
    case FunctionKind::kShiftedPNormPow: {
      // Right-limit at the seam x_1 = 4a.
      const bool shifted = x[0] < 4.0 * shift_;
      for (int i = 0; i < dim_; ++i) {
        const double u = shifted ? x[i] - x_star_[i] : x[i];
        out[i] = kappa_ * c_kappa_ * signed_pow(u, kappa_ - 1.0);
      }
      return;
    }
    case FunctionKind::kHybridQuadLinear: {
      const double v = x[0];
      out[0] = std::abs(v) < kHybridKnot ? 4.0 * v : (v < 0.0 ? -1.0 : 1.0);
      return;
    }
  }
}

Point KappaFunction::subgradient(const Point& x) const {
  Point g(dim_);
  subgradient_into(x, g);
  return g;
}

double eval(const KappaFunction& f, const Point& x) { return f.value(x); }
Point subgrad(const KappaFunction& f, const Point& x) { return f.subgradient(x); }

double nominal_scale(double kappa, int d) {
  check_kappa(kappa);
  check_dim(d);
  if (kappa >= 2.0) return 1.0;
  return std::pow(std::sqrt(static_cast<double>(d)), -kappa);
}

double unit_lipschitz_scale(double kappa, int d, bool shifted_pair) {
  check_kappa(kappa);
  check_dim(d);
  double mass = max_gradient_mass(kappa, d);
  // |x_1 - 2a| <= 2a <= 1/2 on the shifted piece.
  if (shifted_pair) mass += std::pow(0.5, 2.0 * kappa - 2.0);
  return 1.0 / (kappa * std::sqrt(mass));
}

double growth_constant(double kappa, int d, double c_kappa) {
  check_kappa(kappa);
  check_dim(d);
  // ||x||_kappa^kappa >= ||x||_2^kappa for kappa <= 2 and
  // >= d^{1 - kappa/2} ||x||_2^kappa for kappa >= 2.
  return c_kappa * std::min(1.0, std::pow(static_cast<double>(d), 1.0 - kappa / 2.0));
}

KappaFunction make_f0(double kappa, int d, double c_kappa) {
  check_kappa(kappa);
  check_dim(d);
  if (!(c_kappa > 0.0)) throw std::invalid_argument("c_kappa must be positive");
  KappaFunction f;
  f.kind_ = FunctionKind::kPNormPow;
  f.kappa_ = kappa;
  f.dim_ = d;
  f.c_kappa_ = c_kappa;
  f.lambda_growth_ = growth_constant(kappa, d, c_kappa);
  f.lipschitz_ = kappa * c_kappa * std::sqrt(max_gradient_mass(kappa, d));
  f.x_star_ = Point::Zero(d);
  f.f_star_ = 0.0;
  return f;
}

KappaFunction make_f0(double kappa, int d, Scaling scaling) {
  const double c = scaling == Scaling::kNominal ? nominal_scale(kappa, d)
                                              : unit_lipschitz_scale(kappa, d, false);
  return make_f0(kappa, d, c);
}

KappaFunction make_f1(double kappa, int d, double a, double c_kappa) {
  check_kappa(kappa);
  check_dim(d);
  if (!(a > 0.0)) throw std::invalid_argument("separation a must be positive");
  if (4.0 * a > 1.0) throw std::invalid_argument("separation too large: need 4a <= 1");
  if (!(c_kappa > 0.0)) throw std::invalid_argument("c_kappa must be positive");
  KappaFunction f;
  f.kind_ = FunctionKind::kShiftedPNormPow;
  f.kappa_ = kappa;
  f.dim_ = d;
  f.c_kappa_ = c_kappa;
  f.shift_ = a;
  f.c2_ = std::pow(4.0 * a, kappa) - std::pow(2.0 * a, kappa);
  f.lambda_growth_ = growth_constant(kappa, d, c_kappa);
  f.lipschitz_ = kappa * c_kappa *
                 std::sqrt(max_gradient_mass(kappa, d) + std::pow(2.0 * a, 2.0 * kappa - 2.0));
  f.x_star_ = Point::Zero(d);
  f.x_star_[0] = 2.0 * a;
  f.f_star_ = c_kappa * f.c2_;
  return f;
}

KappaFunction make_f1(double kappa, int d, double a, Scaling scaling) {
  const double c = scaling == Scaling::kNominal ? nominal_scale(kappa, d)
                                              : unit_lipschitz_scale(kappa, d, true);
  return make_f1(kappa, d, a, c);
}

KappaFunction make_hybrid() {
  KappaFunction f;
  f.kind_ = FunctionKind::kHybridQuadLinear;
  f.kappa_ = 2.0;
  f.dim_ = 1;
  f.c_kappa_ = 1.0;
  // min of f(x)/x^2 on [-1/2, 1/2] is attained at the endpoints: 0.375/0.25.
  f.lambda_growth_ = 1.5;
  f.lipschitz_ = 1.0;
  f.x_star_ = Point::Zero(1);
  f.f_star_ = 0.0;
  return f;
}

KappaFunction make_function(std::string_view id, double kappa, int d, double a,
                            Scaling scaling) {
  if (id == "f0") return make_f0(kappa, d, scaling);
  if (id == "f1") return make_f1(kappa, d, a, scaling);
  if (id == "hybrid") return make_hybrid();
  throw std::invalid_argument("unknown function id '" + std::string(id) +
                              "' (expected f0, f1 or hybrid)");
}

}  // namespace tncopt
