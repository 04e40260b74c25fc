// Least-squares rate fits on (ln T, ln mean error).

#pragma once

#include <cstdint>
#include <vector>

#include "tncopt/harness/sweep.h"

namespace tncopt::harness {

struct LineFit {
  std::vector<double> x;
  std::vector<double> y;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;  // 0 with only two points
};

// Ordinary least squares y ~ intercept + slope x; needs >= 2 points with
// distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

using RateFit = LineFit;

inline constexpr std::size_t kMinRatePoints = 4;

// ln error ~ intercept + slope ln T. Needs >= 4 budgets and positive errors.
RateFit fit_rate(const std::vector<std::int64_t>& budgets, const std::vector<double>& errors);

enum class ErrorColumn { kFunction, kPoint };

// Fits the per-budget mean of the chosen column.
RateFit fit_rate(const std::vector<SweepRow>& rows, ErrorColumn column);

// ln error ~ intercept + slope T, for exponentially decaying errors.
LineFit fit_exponential(const std::vector<std::int64_t>& budgets, const std::vector<double>& errors);

// Theoretical exponents: -kappa/(2kappa-2) for function error and
// -1/(2kappa-2) for point error.
double theory_slope(double kappa, ErrorColumn column);

}  // namespace tncopt::harness
