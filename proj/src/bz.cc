#include "tncopt/bz.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tncopt {

std::int64_t grid_size(double kappa, double lambda, std::int64_t budget, std::int64_t m_max) {
  if (budget < 2) throw std::invalid_argument("grid_size needs T >= 2");
  if (!(kappa >= 1.0)) throw std::invalid_argument("kappa must be >= 1");
  const double t = static_cast<double>(budget);
  double m = 0.0;
  if (kappa == 1.0) {
    const double exponent = t * lambda * lambda / 2.0;
    m = exponent >= std::log(static_cast<double>(m_max)) ? static_cast<double>(m_max)
                                                         : std::ceil(std::exp(exponent));
  } else {
    m = std::ceil(std::pow(t / std::log(t), 1.0 / (2.0 * kappa - 2.0)));
  }
  m = std::min(m, static_cast<double>(m_max));
  return std::max<std::int64_t>(2, static_cast<std::int64_t>(m));
}

double step_weight(double kappa, double lambda, std::int64_t grid) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
  const double spacing = 1.0 / (3.0 * static_cast<double>(grid));
  return std::min(kMaxStepWeight, lambda * std::pow(spacing, kappa - 1.0));
}

double label_margin(double lambda_grad, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return lambda_grad / (sigma * std::sqrt(2.0 * std::numbers::pi * std::numbers::e));
}

BzState::BzState(std::int64_t grid, double alpha) : alpha_(alpha) {
  if (grid < 2) throw std::invalid_argument("BZ grid needs at least 2 cells");
  if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2]");
  posterior_.assign(static_cast<std::size_t>(grid), 1.0 / static_cast<double>(grid));
}

std::int64_t BzState::next_query() const {
  const auto m = static_cast<std::int64_t>(posterior_.size());
  double cum = 0.0;
  std::int64_t j = 0;
  for (; j < m - 1; ++j) {
    const double next = cum + posterior_[static_cast<std::size_t>(j)];
    if (next >= 0.5) break;
    cum = next;
  }
  const double mass = posterior_[static_cast<std::size_t>(j)];
  const double frac = mass > 0.0 ? (0.5 - cum) / mass : 0.5;
  const auto k = static_cast<std::int64_t>(std::llround(static_cast<double>(j) + frac));
  return std::clamp<std::int64_t>(k, 1, m - 1);
}

void BzState::update(std::int64_t k, int label) {
  if (k < 1 || k >= grid()) throw std::out_of_range("BZ query index outside the grid interior");
  if (label != 1 && label != -1) throw std::invalid_argument("label must be +1 or -1");
  // +1: the crossing is left of k/m.
  const double left = label > 0 ? 1.0 + 2.0 * alpha_ : 1.0 - 2.0 * alpha_;
  const double right = label > 0 ? 1.0 - 2.0 * alpha_ : 1.0 + 2.0 * alpha_;
  const auto split = posterior_.begin() + k;
  std::for_each(posterior_.begin(), split, [left](double& p) { p *= left; });
  std::for_each(split, posterior_.end(), [right](double& p) { p *= right; });
  const double total = std::accumulate(posterior_.begin(), posterior_.end(), 0.0);
  for (double& p : posterior_) p /= total;
  ++queries_;
}

std::int64_t BzState::best_cell() const {
  return std::distance(posterior_.begin(), std::max_element(posterior_.begin(), posterior_.end()));
}

BzResult bz_run(const SignSource& signs, double kappa, double lambda, std::int64_t budget) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (budget < 1) throw std::invalid_argument("budget T must be >= 1");
  const std::int64_t m = grid_size(kappa, lambda, std::max<std::int64_t>(budget, 2));
  BzState state(m, step_weight(kappa, lambda, m));
  const double cell = 1.0 / static_cast<double>(m);
  for (std::int64_t t = 0; t < budget; ++t) {
    const std::int64_t k = state.next_query();
    state.update(k, signs(static_cast<double>(k) * cell));
  }
  const std::int64_t j = state.best_cell();
  BzResult r;
  r.lower = static_cast<double>(j) * cell;
  r.upper = static_cast<double>(j + 1) * cell;
  r.x_hat = 0.5 * (r.lower + r.upper);
  r.queries = state.queries();
  r.grid = m;
  r.alpha = state.alpha();
  return r;
}

BoundedNoiseSigns::BoundedNoiseSigns(double x_star, double margin, std::uint64_t seed)
    : x_star_(x_star), margin_(margin), rng_(seed, 0) {
  if (!(margin > 0.0 && margin <= 0.5)) throw std::invalid_argument("margin must lie in (0, 1/2]");
}

int BoundedNoiseSigns::operator()(double x) {
  const int truth = x > x_star_ ? 1 : -1;
  return rng_.uniform() < 0.5 + margin_ ? truth : -truth;
}

PowerGradientSigns::PowerGradientSigns(double x_star, double lambda_f, double kappa,
                                       double sigma, std::uint64_t seed)
    : x_star_(x_star), lambda_f_(lambda_f), kappa_(kappa), sigma_(sigma), rng_(seed, 0) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("kappa must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
}

double PowerGradientSigns::gradient(double x) const {
  const double u = x - x_star_;
  if (u == 0.0) return 0.0;
  return std::copysign(kappa_ * lambda_f_ * std::pow(std::abs(u), kappa_ - 1.0), u);
}

int PowerGradientSigns::operator()(double x) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noisy = gradient(x) + sigma_ * normal(rng_);
  return noisy > 0.0 ? 1 : -1;
}

SignSource oracle_signs(StochasticOracle& oracle, double lo, double hi) {
  if (oracle.function().dim() != 1) throw std::invalid_argument("BZ needs a 1-D oracle");
  return [&oracle, lo, hi](double x) {
    Point g(1);
    oracle.query_into(Point::Constant(1, lo + x * (hi - lo)), g);
    return g[0] > 0.0 ? 1 : -1;
  };
}

}  // namespace tncopt
