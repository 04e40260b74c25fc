#include "tncopt/harness/rate_fit.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tncopt::harness {
namespace {

std::vector<double> checked_logs(const std::vector<double>& errors) {
  std::vector<double> out;
  out.reserve(errors.size());
  for (double e : errors) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw std::domain_error("mean error " + std::to_string(e) +
                              " is not positive; a noiseless run cannot be rate-fitted");
    }
    out.push_back(std::log(e));
  }
  return out;
}

void check_sizes(std::size_t budgets, std::size_t errors, std::size_t minimum) {
  if (budgets != errors) throw std::invalid_argument("budgets and errors differ in length");
  if (budgets < minimum) {
    throw std::invalid_argument("rate fit needs at least " + std::to_string(minimum) +
                                " budgets, got " + std::to_string(budgets));
  }
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("a line fit needs at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("a line fit needs distinct x values");

  LineFit fit;
  fit.x = x;
  fit.y = y;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / n);
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return fit;
}

RateFit fit_rate(const std::vector<std::int64_t>& budgets, const std::vector<double>& errors) {
  check_sizes(budgets.size(), errors.size(), kMinRatePoints);
  std::vector<double> x;
  for (auto t : budgets) x.push_back(std::log(static_cast<double>(t)));
  return fit_line(x, checked_logs(errors));
}

RateFit fit_rate(const std::vector<SweepRow>& rows, ErrorColumn column) {
  std::vector<std::int64_t> budgets;
  std::vector<double> errors;
  for (const auto& m : summarize(rows)) {
    budgets.push_back(m.T);
    errors.push_back(column == ErrorColumn::kFunction ? m.f_error : m.point_error);
  }
  return fit_rate(budgets, errors);
}

LineFit fit_exponential(const std::vector<std::int64_t>& budgets, const std::vector<double>& errors) {
  check_sizes(budgets.size(), errors.size(), kMinRatePoints);
  std::vector<double> x(budgets.begin(), budgets.end());
  return fit_line(x, checked_logs(errors));
}

double theory_slope(double kappa, ErrorColumn column) {
  if (!(kappa > 1.0)) throw std::invalid_argument("theory exponents need kappa > 1");
  const double denom = 2.0 * kappa - 2.0;
  return column == ErrorColumn::kFunction ? -kappa / denom : -1.0 / denom;
}

}  // namespace tncopt::harness
