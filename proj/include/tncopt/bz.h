// Noise-tolerant bisection on [0, 1] (Burnashev-Zigangirov style).
//
// A one-dimensional convex problem reduces to locating the zero crossing of
// its gradient from noisy signs: label +1 at x means the minimizer lies to the
// left of x. The posterior over m grid cells is updated multiplicatively after
// each label, and the answer is the midpoint of the heaviest cell.
//
// `lambda` throughout is the label-margin constant:
//   |P(label = +1 | x) - 1/2| >= lambda * |x - x*|^{kappa - 1}.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tncopt/oracle.h"
#include "tncopt/random.h"

namespace tncopt {

inline constexpr std::int64_t kMaxGridSize = 10'000'000;
inline constexpr double kMaxStepWeight = 0.4;

// Returns +1 or -1 for a query at x in [0, 1].
using SignSource = std::function<int(double x)>;

// kappa = 1: ceil(e^{T lambda^2 / 2}); kappa > 1: ceil((T / ln T)^{1/(2kappa-2)}).
// Capped at m_max and never below 2.
std::int64_t grid_size(double kappa, double lambda, std::int64_t budget,
                       std::int64_t m_max = kMaxGridSize);

// alpha = min(0.4, lambda * (1/(3m))^{kappa-1}).
double step_weight(double kappa, double lambda, std::int64_t grid);

// Label margin induced by Gaussian gradient noise: a1 * lambda_grad with
// a1 = 1 / (sigma sqrt(2 pi e)), for gradients |g(x)| >= lambda_grad |x - x*|^{kappa-1}.
double label_margin(double lambda_grad, double sigma);

class BzState {
 public:
  BzState(std::int64_t grid, double alpha);

  std::int64_t grid() const { return static_cast<std::int64_t>(posterior_.size()); }
  double alpha() const { return alpha_; }
  std::int64_t queries() const { return queries_; }
  const std::vector<double>& posterior() const { return posterior_; }

  // Interior grid index k in [1, m-1] nearest the posterior median; the query
  // point is k / m.
  std::int64_t next_query() const;
  void update(std::int64_t k, int label);

  // Cell with the largest posterior mass.
  std::int64_t best_cell() const;

 private:
  std::vector<double> posterior_;
  double alpha_;
  std::int64_t queries_ = 0;
};

struct BzResult {
  double lower = 0.0;
  double upper = 1.0;
  double x_hat = 0.5;
  std::int64_t queries = 0;
  std::int64_t grid = 0;
  double alpha = 0.0;
};

BzResult bz_run(const SignSource& signs, double kappa, double lambda, std::int64_t budget);

// Labels that are correct with probability 1/2 + margin everywhere.
class BoundedNoiseSigns {
 public:
  BoundedNoiseSigns(double x_star, double margin, std::uint64_t seed);
  int operator()(double x);

 private:
  double x_star_;
  double margin_;
  CounterRng rng_;
};

// sign(g(x) + sigma z) where g is the derivative of lambda_f |x - x*|^kappa,
// so |g(x)| = kappa lambda_f |x - x*|^{kappa-1}.
class PowerGradientSigns {
 public:
  PowerGradientSigns(double x_star, double lambda_f, double kappa, double sigma,
                     std::uint64_t seed);
  int operator()(double x);
  double gradient(double x) const;

 private:
  double x_star_;
  double lambda_f_;
  double kappa_;
  double sigma_;
  CounterRng rng_;
};

// Signs of the noisy gradient returned by a one-dimensional first-order
// oracle; the unit interval is mapped affinely onto [lo, hi].
SignSource oracle_signs(StochasticOracle& oracle, double lo = 0.0, double hi = 1.0);

}  // namespace tncopt
