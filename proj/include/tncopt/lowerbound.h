// KL divergences between the oracle processes of the f0/f1 pair and the
// resulting Fano-type floor on the estimation error.

#pragma once

#include <cstdint>
#include <optional>

#include "tncopt/oracle.h"

namespace tncopt {

// Normalization shared by f0 and f1 in the two-point construction. It does not
// depend on the separation a (any 4a <= 1).
double pair_scale(double kappa, int d);

// (T / (2 sigma^2)) (M_g + M_f), where M_g and M_f are the largest squared
// gradient and value gaps between f0 and f1 over x_1 in [0, 4a], found by grid
// search with step a / 10^4.
double kl_first_order(double kappa, int d, double a, double sigma, std::int64_t budget);
double kl_first_order(double kappa, double c_kappa, double a, double sigma, std::int64_t budget);

// Value term only: (T / (2 sigma^2)) M_f.
double kl_zeroth_order(double kappa, int d, double a, double sigma, std::int64_t budget);
double kl_zeroth_order(double kappa, double c_kappa, double a, double sigma, std::int64_t budget);

// max(e^{-gamma} / 4, (1 - sqrt(gamma / 2)) / 2).
double fano_bound(double gamma);

struct IndistinguishabilityConfig {
  double kappa = 2.0;
  double sigma = 1.0;
  std::int64_t budget = 4096;
  int trials = 200;  // at least 100
  int dim = 2;
  // Defaults to T^{-1/(2kappa-2)}.
  std::optional<double> separation;
  double delta = 0.2;
  std::uint64_t seed = 0;
};

struct IndistinguishabilityResult {
  double a = 0.0;
  double gamma = 0.0;
  double fano = 0.0;
  // Mean ||x_hat - x*|| over all runs on both functions.
  double mean_point_error = 0.0;
  // Fraction of runs whose output is closer to the other function's minimizer.
  double misidentification_rate = 0.0;
  int runs = 0;
};

// Runs EpochGD `trials` times against each of f0 and f1 at separation a over
// [0,1]^d ∩ unit ball with a gaussian-clipped first-order oracle.
IndistinguishabilityResult indistinguishability_experiment(const IndistinguishabilityConfig& cfg);

}  // namespace tncopt
