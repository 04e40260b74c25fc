#include "tncopt/oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "tncopt/random.h"

namespace tncopt {

OracleOrder parse_order(std::string_view s) {
  if (s == "first") return OracleOrder::kFirst;
  if (s == "zeroth") return OracleOrder::kZeroth;
  throw std::invalid_argument("order must be 'first' or 'zeroth', got '" + std::string(s) + "'");
}

NoiseModel parse_noise_model(std::string_view s) {
  if (s == "gaussian-clipped") return NoiseModel::kGaussianClipped;
  if (s == "sphere-bounded") return NoiseModel::kSphereBounded;
  throw std::invalid_argument("oracle must be 'gaussian-clipped' or 'sphere-bounded', got '" +
                              std::string(s) + "'");
}

std::string_view to_string(OracleOrder o) {
  return o == OracleOrder::kFirst ? "first" : "zeroth";
}

std::string_view to_string(NoiseModel m) {
  return m == NoiseModel::kGaussianClipped ? "gaussian-clipped" : "sphere-bounded";
}

double default_clip(double lipschitz, double sigma, int dim) {
  return std::max(1.0, lipschitz) + 3.0 * sigma * std::sqrt(static_cast<double>(dim));
}

StochasticOracle::StochasticOracle(KappaFunction f, OracleConfig config,
                                   std::optional<ConvexDomain> domain)
    : f_(std::move(f)), config_(config), domain_(std::move(domain)) {
  if (!(config_.sigma >= 0.0) || !std::isfinite(config_.sigma)) {
    throw std::invalid_argument("sigma must be finite and >= 0");
  }
  if (config_.budget < 1) throw std::invalid_argument("oracle budget must be >= 1");
  if (config_.clip_g && !(*config_.clip_g > 0.0)) {
    throw std::invalid_argument("clip_g must be positive");
  }
  if (domain_ && domain_->dim() != f_.dim()) {
    throw std::invalid_argument("oracle domain and function dimensions differ");
  }
  if (config_.noise == NoiseModel::kGaussianClipped) {
    if (!config_.clip_g) config_.clip_g = default_clip(f_.lipschitz(), config_.sigma, f_.dim());
    gradient_bound_ = *config_.clip_g;
  } else {
    gradient_bound_ = f_.lipschitz() + config_.sigma;
  }
}

double StochasticOracle::respond(const Point& x, Point* grad) {
  if (used_ >= config_.budget) {
    throw BudgetExhausted("oracle budget of " + std::to_string(config_.budget) +
                          " queries exhausted");
  }
  if (domain_ && !contains(*domain_, x)) {
    throw std::domain_error("oracle queried outside its domain");
  }
  CounterRng rng(config_.seed, static_cast<std::uint64_t>(used_));
  ++used_;

  const double sigma = config_.sigma;
  std::normal_distribution<double> normal(0.0, 1.0);
  double value = f_.value(x);

  if (config_.noise == NoiseModel::kGaussianClipped) {
    value += sigma * normal(rng);
  } else {
    value += (rng() & 1U) ? sigma : -sigma;
  }
  if (grad == nullptr) return value;

  f_.subgradient_into(x, *grad);

  if (config_.noise == NoiseModel::kGaussianClipped) {
    if (sigma > 0.0) {
      for (int i = 0; i < grad->size(); ++i) (*grad)[i] += sigma * normal(rng);
    }
    const double n = grad->norm();
    if (n > *config_.clip_g) *grad *= *config_.clip_g / n;
  } else if (sigma > 0.0) {
    Point dir(grad->size());
    double n = 0.0;
    do {
      for (int i = 0; i < dir.size(); ++i) dir[i] = normal(rng);
      n = dir.norm();
    } while (n == 0.0);
    *grad += dir * (sigma / n);
  }
  return value;
}

OracleResponse StochasticOracle::query(const Point& x) {
  OracleResponse r;
  if (config_.order == OracleOrder::kFirst) {
    Point g(f_.dim());
    r.value_hat = respond(x, &g);
    r.grad_hat = std::move(g);
  } else {
    r.value_hat = respond(x, nullptr);
  }
  r.queries_remaining = queries_remaining();
  return r;
}

double StochasticOracle::query_into(const Point& x, Point& grad) {
  if (config_.order != OracleOrder::kFirst) {
    throw std::logic_error("zeroth-order oracle does not return gradients");
  }
  return respond(x, &grad);
}

MassBounds gaussian_mass_bounds(double sigma, double t) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (t >= sigma) throw std::invalid_argument("mass bounds only hold for t < sigma");
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return {t / (sigma * root_two_pi * std::sqrt(std::numbers::e)), t / (sigma * root_two_pi)};
}

}  // namespace tncopt
