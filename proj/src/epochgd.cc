#include "tncopt/epochgd.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tncopt {
namespace {

constexpr double kC0Factor = 288.0;
constexpr int kMaxEpochs = 60;
constexpr double kRequirementTol = 1e-9;

std::int64_t epoch_c0(int epochs, double delta) {
  return static_cast<std::int64_t>(std::ceil(kC0Factor * std::log(epochs / delta)));
}

double queries_for(int epochs, std::int64_t c0) {
  return static_cast<double>(c0) * (std::ldexp(1.0, epochs + 1) - 2.0);
}

void require(bool ok, const char* name, int epoch) {
  if (!ok) {
    throw std::logic_error(std::string("schedule violates requirement ") + name + " at epoch " +
                           std::to_string(epoch));
  }
}

// Checks R1-R4 of the epoch induction against the built schedule.
void check_requirements(const EpochSchedule& s) {
  const double k = s.kappa;
  const double g2 = s.gradient_bound * s.gradient_bound;
  const double log_term = std::log(s.epochs / s.delta);

  // R1: the largest possible initial gap (G^k / lambda)^{1/(k-1)} is covered.
  const double max_gap = std::pow(std::pow(s.gradient_bound, k) / s.lambda, 1.0 / (k - 1.0));
  require(max_gap <= s.c2 * s.steps[0] * (1.0 + kRequirementTol), "R1", 1);

  for (int e = 0; e < s.epochs; ++e) {
    const double eta = s.steps[static_cast<std::size_t>(e)];
    const double eta_next = eta * step_decay(k);
    const double len = static_cast<double>(s.lengths[static_cast<std::size_t>(e)]);
    const double r2 = std::pow(s.c2 * eta / s.lambda, 2.0 / k) / (2.0 * eta * len);
    require(r2 <= eta * g2 / 6.0 * (1.0 + kRequirementTol), "R2", e + 1);
    const double r3 = 4.0 * s.gradient_bound * std::pow(s.c2 * eta / s.lambda, 1.0 / k) *
                      std::sqrt(2.0 * log_term) / std::sqrt(len);
    require(r3 <= eta * g2 / 3.0 * (1.0 + kRequirementTol), "R3", e + 1);
    require(eta * g2 <= s.c2 * eta_next * (1.0 + kRequirementTol), "R4", e + 1);
  }
}

}  // namespace

double step_decay(double kappa) { return std::pow(2.0, -kappa / (2.0 * kappa - 2.0)); }

std::int64_t EpochSchedule::total_queries() const {
  std::int64_t total = 0;
  for (auto len : lengths) total += len;
  return total;
}

double EpochSchedule::final_step() const {
  return c1 * std::pow(step_decay(kappa), static_cast<double>(epochs + 1));
}

double EpochSchedule::function_error_bound() const { return c2 * final_step(); }

EpochSchedule compute_constants(double kappa, double lambda, double gradient_bound, double delta,
                                std::int64_t budget) {
  if (!(kappa > 1.0)) throw std::invalid_argument("kappa must be > 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(gradient_bound > 0.0)) throw std::invalid_argument("gradient bound G must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (budget < 1) throw std::invalid_argument("budget T must be >= 1");

  // C0 grows with E, so feasibility is monotone in E.
  int epochs = 0;
  for (int e = 1; e <= kMaxEpochs; ++e) {
    if (queries_for(e, epoch_c0(e, delta)) > static_cast<double>(budget)) break;
    epochs = e;
  }
  if (epochs < 1) {
    throw std::invalid_argument("budget T = " + std::to_string(budget) +
                                " is too small for a single epoch (needs " +
                                std::to_string(2 * epoch_c0(1, delta)) + " queries)");
  }

  EpochSchedule s;
  s.kappa = kappa;
  s.lambda = lambda;
  s.gradient_bound = gradient_bound;
  s.delta = delta;
  s.budget = budget;
  s.epochs = epochs;
  s.c0 = epoch_c0(epochs, delta);
  s.c1 = std::pow(gradient_bound, (2.0 - kappa) / (kappa - 1.0)) *
         std::pow(2.0, kappa / (2.0 * (kappa - 1.0) * (kappa - 1.0))) /
         std::pow(lambda, 1.0 / (kappa - 1.0));
  s.c2 = gradient_bound * gradient_bound * std::pow(2.0, kappa / (2.0 * kappa - 2.0));

  double eta = s.c1 * step_decay(kappa);
  std::int64_t len = 2 * s.c0;
  for (int e = 1; e <= epochs; ++e) {
    s.lengths.push_back(len);
    s.steps.push_back(eta);
    s.radii.push_back(std::pow(s.c2 * eta / lambda, 1.0 / kappa));
    len *= 2;
    eta *= step_decay(kappa);
  }
  check_requirements(s);
  return s;
}

RunResult run(StochasticOracle& oracle, const ConvexDomain& domain,
              const EpochSchedule& schedule, const Point& x_init,
              const IterateObserver& observer) {
  const KappaFunction& f = oracle.function();
  if (f.dim() != domain.dim()) throw std::invalid_argument("function and domain dimensions differ");
  if (!contains(domain, x_init)) throw std::invalid_argument("x_init must lie in the domain");
  if (schedule.lambda > f.lambda_growth() * (1.0 + 1e-12)) {
    throw std::invalid_argument("schedule lambda exceeds the function's growth constant");
  }
  if (oracle.queries_remaining() < schedule.total_queries()) {
    throw std::invalid_argument("oracle budget is smaller than the schedule's query count");
  }

  RunResult result;
  const std::int64_t used_before = oracle.queries_used();
  Point x = x_init;
  Point grad(f.dim());
  Point mean(f.dim());

  std::array<const SimpleSet*, 4> refs{};
  std::size_t n_pieces = 0;
  for (const auto& p : domain.pieces()) refs[n_pieces++] = &p;

  for (int e = 0; e < schedule.epochs; ++e) {
    const auto idx = static_cast<std::size_t>(e);
    const double step = schedule.steps[idx];
    const double radius = schedule.radii[idx];
    const std::int64_t length = schedule.lengths[idx];
    result.trace.push_back({x, radius, step, length});

    const SimpleSet epoch_ball{Ball{x, radius}};
    refs[n_pieces] = &epoch_ball;
    const std::span<const SimpleSet* const> sets(refs.data(), n_pieces + 1);

    mean.setZero();
    for (std::int64_t t = 1; t <= length; ++t) {
      mean += (x - mean) / static_cast<double>(t);
      oracle.query_into(x, grad);
      x = project_intersection(sets, x - step * grad);
      if (observer) observer(e + 1, x);
    }
    x = mean;
  }

  result.x_hat = x;
  result.f_error = f.value(x) - f.f_star();
  result.point_error = (x - f.x_star()).norm();
  result.queries_used = oracle.queries_used() - used_before;
  return result;
}

}  // namespace tncopt
