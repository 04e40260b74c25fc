// Stochastic first- and zeroth-order oracles.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "tncopt/functions.h"
#include "tncopt/geometry.h"

namespace tncopt {

enum class OracleOrder { kFirst, kZeroth };

enum class NoiseModel {
  // N(0, sigma^2) on the value and each gradient coordinate, gradient then
  // norm-clipped to clip_g.
  kGaussianClipped,
  // Value noise +-sigma, gradient noise uniform on the sphere of radius sigma.
  kSphereBounded,
};

OracleOrder parse_order(std::string_view s);
NoiseModel parse_noise_model(std::string_view s);
std::string_view to_string(OracleOrder o);
std::string_view to_string(NoiseModel m);

struct OracleConfig {
  OracleOrder order = OracleOrder::kFirst;
  double sigma = 1.0;
  std::int64_t budget = 1;
  std::uint64_t seed = 0;
  // Gaussian model only; defaults to max(1, L) + 3 sigma sqrt(d).
  std::optional<double> clip_g;
  NoiseModel noise = NoiseModel::kGaussianClipped;
};

struct OracleResponse {
  double value_hat = 0.0;
  std::optional<Point> grad_hat;
  std::int64_t queries_remaining = 0;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double default_clip(double lipschitz, double sigma, int dim);

class StochasticOracle {
 public:
  // When `domain` is given, queries outside it are rejected.
  StochasticOracle(KappaFunction f, OracleConfig config,
                   std::optional<ConvexDomain> domain = std::nullopt);

  OracleResponse query(const Point& x);
  // First-order query writing the noisy gradient into `grad` (size dim()).
  // Returns the noisy value.
  double query_into(const Point& x, Point& grad);

  const KappaFunction& function() const { return f_; }
  const OracleConfig& config() const { return config_; }
  std::int64_t queries_used() const { return used_; }
  std::int64_t queries_remaining() const { return config_.budget - used_; }
  // Almost-sure bound on ||grad_hat||: the clip level or L + sigma.
  double gradient_bound() const { return gradient_bound_; }

 private:
  double respond(const Point& x, Point* grad);

  KappaFunction f_;
  OracleConfig config_;
  std::optional<ConvexDomain> domain_;
  std::int64_t used_ = 0;
  double gradient_bound_ = 0.0;
};

struct MassBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Linear sandwich t/(sigma sqrt(2 pi e)) <= P(0 <= z <= t) <= t/(sigma sqrt(2 pi))
// for z ~ N(0, sigma^2), valid for 0 < t < sigma.
MassBounds gaussian_mass_bounds(double sigma, double t);

}  // namespace tncopt
