#include "tncopt/lowerbound.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tncopt/epochgd.h"
#include "tncopt/functions.h"
#include "tncopt/geometry.h"
#include "tncopt/random.h"

namespace tncopt {
namespace {

constexpr double kGridDivisions = 1e4;

struct PairGaps {
  double grad = 0.0;   // M_g
  double value = 0.0;  // M_f
};

double signed_pow(double u, double p) { return std::copysign(std::pow(std::abs(u), p), u); }

PairGaps pair_gaps(double kappa, double c, double a) {
  if (!(kappa > 1.0)) throw std::invalid_argument("kappa must be > 1");
  if (!(a > 0.0) || 4.0 * a > 1.0) throw std::invalid_argument("separation a must satisfy 0 < 4a <= 1");
  if (!(c > 0.0)) throw std::invalid_argument("c_kappa must be positive");
  const double c2 = std::pow(4.0 * a, kappa) - std::pow(2.0 * a, kappa);
  const auto n = static_cast<int>(4.0 * kGridDivisions);
  PairGaps gaps;
  for (int i = 0; i <= n; ++i) {
    const double x = 4.0 * a * i / n;
    const double dg = c * kappa * (signed_pow(x - 2.0 * a, kappa - 1.0) - std::pow(x, kappa - 1.0));
    const double df = c * (std::pow(std::abs(x - 2.0 * a), kappa) + c2 - std::pow(x, kappa));
    gaps.grad = std::max(gaps.grad, dg * dg);
    gaps.value = std::max(gaps.value, df * df);
  }
  return gaps;
}

void check_noise(double sigma, std::int64_t budget) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (budget < 1) throw std::invalid_argument("budget T must be >= 1");
}

}  // namespace

double pair_scale(double kappa, int d) { return unit_lipschitz_scale(kappa, d, true); }

double kl_first_order(double kappa, double c_kappa, double a, double sigma, std::int64_t budget) {
  check_noise(sigma, budget);
  const PairGaps g = pair_gaps(kappa, c_kappa, a);
  return static_cast<double>(budget) / (2.0 * sigma * sigma) * (g.grad + g.value);
}

double kl_first_order(double kappa, int d, double a, double sigma, std::int64_t budget) {
  return kl_first_order(kappa, pair_scale(kappa, d), a, sigma, budget);
}

double kl_zeroth_order(double kappa, double c_kappa, double a, double sigma, std::int64_t budget) {
  check_noise(sigma, budget);
  const PairGaps g = pair_gaps(kappa, c_kappa, a);
  return static_cast<double>(budget) / (2.0 * sigma * sigma) * g.value;
}

double kl_zeroth_order(double kappa, int d, double a, double sigma, std::int64_t budget) {
  return kl_zeroth_order(kappa, pair_scale(kappa, d), a, sigma, budget);
}

double fano_bound(double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  return std::max(std::exp(-gamma) / 4.0, (1.0 - std::sqrt(gamma / 2.0)) / 2.0);
}

IndistinguishabilityResult indistinguishability_experiment(const IndistinguishabilityConfig& cfg) {
  if (cfg.trials < 100) throw std::invalid_argument("trials must be >= 100");
  if (!(cfg.sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  const double a = cfg.separation.value_or(
      std::pow(static_cast<double>(cfg.budget), -1.0 / (2.0 * cfg.kappa - 2.0)));
  const double c = pair_scale(cfg.kappa, cfg.dim);

  IndistinguishabilityResult r;
  r.a = a;
  // Without noise the pair is perfectly distinguishable: gamma = inf, floor 0.
  r.gamma = cfg.sigma > 0.0 ? kl_first_order(cfg.kappa, c, a, cfg.sigma, cfg.budget)
                            : std::numeric_limits<double>::infinity();
  r.fano = cfg.sigma > 0.0 ? fano_bound(r.gamma) : 0.0;

  const ConvexDomain domain = ConvexDomain::StandardSet(cfg.dim);
  const KappaFunction pair[2] = {make_f0(cfg.kappa, cfg.dim, c), make_f1(cfg.kappa, cfg.dim, a, c)};
  const Point x_init = domain.center_point();

  double error_sum = 0.0;
  int wrong = 0;
  for (int which = 0; which < 2; ++which) {
    const KappaFunction& f = pair[which];
    const KappaFunction& other = pair[1 - which];
    OracleConfig oc;
    oc.sigma = cfg.sigma;
    oc.budget = cfg.budget;
    const double clip = default_clip(std::max(pair[0].lipschitz(), pair[1].lipschitz()), cfg.sigma,
                                     cfg.dim);
    oc.clip_g = clip;
    const EpochSchedule schedule =
        compute_constants(cfg.kappa, f.lambda_growth(), clip, cfg.delta, cfg.budget);
    for (int t = 0; t < cfg.trials; ++t) {
      oc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(which), static_cast<std::uint64_t>(t));
      StochasticOracle oracle(f, oc);
      const RunResult run_result = run(oracle, domain, schedule, x_init);
      error_sum += run_result.point_error;
      const double to_other = (run_result.x_hat - other.x_star()).norm();
      if (to_other < run_result.point_error) ++wrong;
      ++r.runs;
    }
  }
  r.mean_point_error = error_sum / r.runs;
  r.misidentification_rate = static_cast<double>(wrong) / r.runs;
  return r;
}

}  // namespace tncopt
