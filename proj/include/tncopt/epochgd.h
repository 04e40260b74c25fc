// Epoch-based projected stochastic subgradient descent for functions with
// growth exponent kappa.
//
// Epoch e runs T_e = C0 * 2^e steps of size eta_e inside S ∩ B(x_1^e, R_e),
// and the next epoch starts from the average iterate. Between epochs the
// step shrinks by 2^{-kappa/(2kappa-2)} and R_e = (C2 eta_e / lambda)^{1/kappa}.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tncopt/geometry.h"
#include "tncopt/oracle.h"

namespace tncopt {

struct EpochSchedule {
  double kappa = 2.0;
  double lambda = 1.0;
  double gradient_bound = 1.0;  // G
  double delta = 0.1;
  std::int64_t budget = 0;  // T

  std::int64_t c0 = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  int epochs = 0;  // E

  // Per-epoch values, index 0 holds epoch 1.
  std::vector<std::int64_t> lengths;
  std::vector<double> steps;
  std::vector<double> radii;

  std::int64_t total_queries() const;
  // Step size eta_{E+1} the schedule would use after its last epoch.
  double final_step() const;
  // C2 * eta_{E+1}: function-error level the epoch induction guarantees.
  double function_error_bound() const;
};

// Multiplicative factor 2^{-kappa/(2kappa-2)} applied to the step each epoch.
double step_decay(double kappa);

// Builds the schedule for budget T. C0 = ceil(288 ln(E/delta)),
// C1 = G^{(2-kappa)/(kappa-1)} 2^{kappa/(2(kappa-1)^2)} / lambda^{1/(kappa-1)},
// C2 = G^2 2^{kappa/(2kappa-2)}, and E is the largest epoch count whose
// queries C0 (2^{E+1} - 2) fit in T. The four induction requirements are
// checked numerically; a violation throws std::logic_error.
EpochSchedule compute_constants(double kappa, double lambda, double gradient_bound, double delta,
                                std::int64_t budget);

struct EpochTrace {
  Point start;  // x_1^e
  double radius = 0.0;
  double step = 0.0;
  std::int64_t length = 0;
};

struct RunResult {
  Point x_hat;
  double f_error = 0.0;
  double point_error = 0.0;
  std::int64_t queries_used = 0;
  std::vector<EpochTrace> trace;
};

// Called after every projected step with the 1-based epoch and the new iterate.
using IterateObserver = std::function<void(int epoch, const Point& iterate)>;

RunResult run(StochasticOracle& oracle, const ConvexDomain& domain,
              const EpochSchedule& schedule, const Point& x_init,
              const IterateObserver& observer = {});

}  // namespace tncopt
