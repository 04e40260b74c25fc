#include "tncopt/harness/lemmas.h"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "tncopt/bz.h"
#include "tncopt/functions.h"
#include "tncopt/geometry.h"
#include "tncopt/oracle.h"
#include "tncopt/random.h"

namespace tncopt::harness {
namespace {

constexpr double kRelTol = 1e-10;
constexpr double kLipschitzTol = 1e-9;
constexpr double kConvexityTol = 1e-9;
// Absorbs cancellation in f(x) - f* for functions with f* != 0.
constexpr double kGrowthTol = 1e-14;

// Returns (lhs, rhs) of an inequality lhs >= rhs.
using Sampler = std::function<std::pair<double, double>(CounterRng&)>;

class Suite {
 public:
  explicit Suite(const LemmaOptions& options) : options_(options) {}

  void check(std::string group, std::string name, std::string description, const Sampler& sample,
             double abs_tol = 0.0, bool expect_violations = false,
             std::int64_t samples = 0) {
    LemmaCheck c;
    c.group = std::move(group);
    c.name = std::move(name);
    c.description = std::move(description);
    c.samples = samples > 0 ? samples : options_.samples;
    c.expect_violations = expect_violations;
    c.worst_slack = std::numeric_limits<double>::infinity();
    CounterRng rng(options_.seed, report_.checks.size());
    for (std::int64_t i = 0; i < c.samples; ++i) {
      const auto [lhs, rhs] = sample(rng);
      const double slack = lhs - rhs;
      c.worst_slack = std::min(c.worst_slack, slack);
      const double tol = abs_tol + kRelTol * (std::abs(lhs) + std::abs(rhs));
      if (slack < -tol || std::isnan(slack)) ++c.violations;
    }
    c.passed = expect_violations ? c.violations > 0 : c.violations == 0;
    report_.checks.push_back(std::move(c));
  }

  LemmaReport take() {
    report_.seed = options_.seed;
    return std::move(report_);
  }

  const LemmaOptions& options() const { return options_; }

 private:
  LemmaOptions options_;
  LemmaReport report_;
};

double uniform(CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

Point sample_box(CounterRng& rng, int d, double lo, double hi) {
  Point x(d);
  for (int i = 0; i < d; ++i) x[i] = uniform(rng, lo, hi);
  return x;
}

// Uniform on [0,1]^d ∩ unit ball.
Point sample_standard(CounterRng& rng, int d) {
  for (;;) {
    Point x = sample_box(rng, d, 0.0, 1.0);
    if (x.norm() <= 1.0) return x;
  }
}

// Half the samples are pulled toward `anchor` (a point of the convex set) so
// that the neighbourhood of the minimizer is well covered.
Point sample_near(CounterRng& rng, const Point& anchor, Point x) {
  if (rng.uniform() < 0.5) return x;
  const double s = std::pow(rng.uniform(), 3.0);
  return anchor + s * (x - anchor);
}

double pnorm_pow(const Point& x, double k) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), k);
  return s;
}

std::string tag(double kappa) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", kappa);
  return buf;
}

using PointSampler = std::function<Point(CounterRng&)>;

void growth_check(Suite& s, const std::string& group, const std::string& name,
                  const KappaFunction& f, const PointSampler& draw) {
  s.check(group, name, "f(x) - f* >= lambda ||x - x*||^kappa", [&](CounterRng& rng) {
    const Point x = sample_near(rng, f.x_star(), draw(rng));
    return std::pair{f.value(x) - f.f_star(),
                     f.lambda_growth() * std::pow((x - f.x_star()).norm(), f.kappa())};
  }, kGrowthTol);
}

void gradient_growth_check(Suite& s, const std::string& name, const KappaFunction& f,
                           const PointSampler& draw) {
  s.check("lemma2", name, "||g(x)|| >= lambda ||x - x*||^{kappa-1}", [&](CounterRng& rng) {
    const Point x = sample_near(rng, f.x_star(), draw(rng));
    return std::pair{f.subgradient(x).norm(),
                     f.lambda_growth() * std::pow((x - f.x_star()).norm(), f.kappa() - 1.0)};
  });
}

void lipschitz_check(Suite& s, const std::string& group, const std::string& name,
                     const KappaFunction& f, double bound, const PointSampler& draw) {
  s.check(
      group, name, "||g(x)|| <= " + tag(bound),
      [&](CounterRng& rng) { return std::pair{bound, f.subgradient(draw(rng)).norm()}; },
      kLipschitzTol);
}

void convexity_check(Suite& s, const std::string& group, const std::string& name,
                     const KappaFunction& f, const PointSampler& draw) {
  s.check(
      group, name, "f(tx + (1-t)y) <= t f(x) + (1-t) f(y)",
      [&](CounterRng& rng) {
        const Point x = draw(rng);
        const Point y = draw(rng);
        const double t = rng.uniform();
        return std::pair{t * f.value(x) + (1.0 - t) * f.value(y), f.value(t * x + (1.0 - t) * y)};
      },
      kConvexityTol);
}

// t F(x) + (1-t) F(y) - F(tx + (1-t)y) >= (lambda/2) t(1-t) ||x - y||^k for F = sum |x_i|^k.
void uniform_convexity_check(Suite& s, const std::string& group, const std::string& name,
                             const std::string& description, double k, double lambda,
                             const PointSampler& draw) {
  s.check(group, name, description, [&, k, lambda](CounterRng& rng) {
    const Point x = draw(rng);
    const Point y = draw(rng);
    const double t = rng.uniform();
    const double gap = t * pnorm_pow(x, k) + (1.0 - t) * pnorm_pow(y, k) -
                       pnorm_pow(t * x + (1.0 - t) * y, k);
    return std::pair{gap, lambda / 2.0 * t * (1.0 - t) * std::pow((x - y).norm(), k)};
  });
}

double normal_mass(double sigma, double t) { return 0.5 * std::erf(t / (sigma * std::numbers::sqrt2)); }

PointSampler standard(int d) {
  return [d](CounterRng& rng) { return sample_standard(rng, d); };
}

PointSampler cube(int d, double lo, double hi) {
  return [d, lo, hi](CounterRng& rng) { return sample_box(rng, d, lo, hi); };
}

void lemma1(Suite& s) {
  for (int d : {1, 2, 4}) {
    const KappaFunction f = make_f0(1.5, d);
    const std::string base = "f0_k1.5_d" + std::to_string(d);
    growth_check(s, "lemma1", base + "_growth", f, standard(d));
    convexity_check(s, "lemma1", base + "_convex", f, standard(d));
  }
  // For kappa < 2 the convexity gap of nearby points is O(|x-y|^2), too small
  // to dominate |x-y|^{1.5}.
  const double lambda = make_f0(1.5, 1).lambda_growth();
  s.check(
      "lemma1", "abs_k1.5_not_uniformly_convex",
      "uniform convexity of |x|^1.5 with the growth lambda fails (violations expected)",
      [lambda](CounterRng& rng) {
        const double x = uniform(rng, 0.2, 1.0);
        const double y = x + uniform(rng, 1e-4, 1e-2);
        const double t = uniform(rng, 0.25, 0.75);
        const double gap = t * std::pow(x, 1.5) + (1.0 - t) * std::pow(y, 1.5) -
                           std::pow(t * x + (1.0 - t) * y, 1.5);
        return std::pair{gap, lambda / 2.0 * t * (1.0 - t) * std::pow(y - x, 1.5)};
      },
      0.0, true);
}

void lemma2(Suite& s) {
  for (double k : {1.5, 2.0, 3.0}) {
    for (int d : {1, 2, 3}) {
      const std::string base = "_k" + tag(k) + "_d" + std::to_string(d);
      gradient_growth_check(s, "f0" + base, make_f0(k, d), standard(d));
      gradient_growth_check(s, "f1_a0.1" + base, make_f1(k, d, 0.1), standard(d));
    }
  }
}

void lemma3(Suite& s) {
  const std::int64_t n = s.options().samples;
  for (double sigma : {0.5, 1.0, 2.0}) {
    // Deterministic t-grid over (0, sigma).
    auto t_at = [sigma, n](std::int64_t i) { return sigma * (static_cast<double>(i) + 0.5) / n; };
    auto counter = std::make_shared<std::int64_t>(0);
    s.check(
        "lemma3", "mass_lower_sigma" + tag(sigma), "P(0 <= z <= t) >= t / (sigma sqrt(2 pi e))",
        [=](CounterRng&) {
          const double t = t_at((*counter)++ % n);
          return std::pair{normal_mass(sigma, t), gaussian_mass_bounds(sigma, t).lower};
        });
    *counter = 0;
    s.check(
        "lemma3", "mass_upper_sigma" + tag(sigma), "P(0 <= z <= t) <= t / (sigma sqrt(2 pi))",
        [=](CounterRng&) {
          const double t = t_at((*counter)++ % n);
          return std::pair{gaussian_mass_bounds(sigma, t).upper, normal_mass(sigma, t)};
        });
  }
  // Label margin of the sign of a noisy gradient of lambda_f |x - x*|^kappa,
  // wherever |g(x)| < sigma.
  for (double k : {1.5, 2.0, 3.0}) {
    const double sigma = 1.0;
    const double lambda_grad = k;  // lambda_f = 1
    s.check("lemma3", "label_margin_k" + tag(k),
            "|P(g + z > 0) - 1/2| >= a1 lambda |x - x*|^{kappa-1}", [=](CounterRng& rng) {
              for (;;) {
                const double x_star = uniform(rng, 0.2, 0.8);
                const double u = std::abs(rng.uniform() - x_star);
                const double g = lambda_grad * std::pow(u, k - 1.0);
                if (g >= sigma) continue;
                return std::pair{normal_mass(sigma, g),
                                 label_margin(lambda_grad, sigma) * std::pow(u, k - 1.0)};
              }
            });
  }
}

void lemma6(Suite& s) {
  for (double k : {1.5, 2.0, 3.0}) {
    for (int d : {1, 2, 4}) {
      const std::string base = "_k" + tag(k) + "_d" + std::to_string(d);
      const KappaFunction f0u = make_f0(k, d, Scaling::kUnitLipschitz);
      const KappaFunction f1u = make_f1(k, d, 0.2, Scaling::kUnitLipschitz);
      lipschitz_check(s, "lemma6", "f0_unit" + base + "_lipschitz", f0u, 1.0, standard(d));
      lipschitz_check(s, "lemma6", "f1_unit" + base + "_lipschitz", f1u, 1.0, standard(d));
      const KappaFunction f0p = make_f0(k, d);
      const KappaFunction f1p = make_f1(k, d, 0.2);
      lipschitz_check(s, "lemma6", "f0_nominal" + base + "_certificate", f0p, f0p.lipschitz(),
                      standard(d));
      growth_check(s, "lemma6", "f0_nominal" + base + "_growth", f0p, standard(d));
      growth_check(s, "lemma6", "f1_nominal" + base + "_growth", f1p, standard(d));
      convexity_check(s, "lemma6", "f1_nominal" + base + "_convex", f1p, standard(d));
    }
  }
}

void lemma7(Suite& s) {
  for (double k : {2.0, 3.0, 4.0}) {
    const double lambda_min = 4.0 / std::pow(2.0, k);
    for (int d : {2, 3, 5}) {
      const std::string base = "_k" + tag(k) + "_d" + std::to_string(d);
      const double dd = static_cast<double>(d);
      uniform_convexity_check(s, "lemma7", "sum_stated" + base + "_standard",
                              "lambda = lambda_min / d^{1/2 - 1/k} on [0,1]^d ∩ unit ball", k,
                              lambda_min / std::pow(dd, 0.5 - 1.0 / k), standard(d));
      uniform_convexity_check(s, "lemma7", "sum_corrected" + base + "_cube",
                              "lambda = lambda_min d^{1 - k/2} on [-1,1]^d", k,
                              lambda_min * std::pow(dd, 1.0 - k / 2.0), cube(d, -1.0, 1.0));
    }
  }
}

void lemma8(Suite& s) {
  for (double k : {2.0, 3.0, 4.0}) {
    const double lambda = 4.0 / std::pow(2.0, k);
    uniform_convexity_check(s, "lemma8", "abs_k" + tag(k),
                            "t|x|^k + (1-t)|y|^k >= |tx+(1-t)y|^k + (lambda/2) t(1-t)|x-y|^k", k,
                            lambda, cube(1, -1.0, 1.0));
    s.check("lemma8", "abs_k" + tag(k) + "_midpoint",
            "(|x|^k + |y|^k)/2 >= |(x+y)/2|^k + |(x-y)/2|^k", [k](CounterRng& rng) {
              const double x = uniform(rng, -1.0, 1.0);
              const double y = uniform(rng, -1.0, 1.0);
              return std::pair{0.5 * std::pow(std::abs(x), k) + 0.5 * std::pow(std::abs(y), k),
                               std::pow(std::abs(0.5 * (x + y)), k) +
                                   std::pow(std::abs(0.5 * (x - y)), k)};
            });
  }
}

void hybrid(Suite& s) {
  const KappaFunction f = make_hybrid();
  const PointSampler interval = cube(1, -0.5, 0.5);
  convexity_check(s, "hybrid", "convex", f, interval);
  lipschitz_check(s, "hybrid", "lipschitz", f, 1.0, interval);
  growth_check(s, "hybrid", "growth_k2", f, interval);
  // Strong convexity with any modulus mu > 0 fails once x and y share a linear
  // piece; the check uses mu = 1e-3.
  s.check(
      "hybrid", "not_strongly_convex",
      "f(y) >= f(x) + g(x)(y - x) + (mu/2)(y - x)^2 fails (violations expected)",
      [&f](CounterRng& rng) {
        const Point x = Point::Constant(1, uniform(rng, -0.5, 0.5));
        const Point y = Point::Constant(1, uniform(rng, -0.5, 0.5));
        const double mu = 1e-3;
        return std::pair{f.value(y),
                         f.value(x) + f.subgradient(x).dot(y - x) + mu / 2.0 * (y - x).squaredNorm()};
      },
      0.0, true);
}

void geometry(Suite& s) {
  const std::int64_t n = s.options().projection_samples;
  for (int d : {2, 3}) {
    const ConvexDomain domain = ConvexDomain::StandardSet(d);
    const std::string base = "standard_d" + std::to_string(d);
    s.check(
        "geometry", base + "_feasible", "project(x) lies in the domain",
        [&domain, d](CounterRng& rng) {
          const Point p = project(domain, sample_box(rng, d, -2.0, 2.0));
          return std::pair{contains(domain, p) ? 1.0 : 0.0, 1.0};
        },
        0.0, false, n);
    s.check(
        "geometry", base + "_idempotent", "||project(project(x)) - project(x)|| <= 1e-10",
        [&domain, d](CounterRng& rng) {
          const Point p = project(domain, sample_box(rng, d, -2.0, 2.0));
          return std::pair{1e-10, (project(domain, p) - p).norm()};
        },
        0.0, false, n);
    s.check(
        "geometry", base + "_nonexpansive", "||P(x) - P(y)|| <= ||x - y|| + 1e-10",
        [&domain, d](CounterRng& rng) {
          const Point x = sample_box(rng, d, -2.0, 2.0);
          const Point y = sample_box(rng, d, -2.0, 2.0);
          return std::pair{(x - y).norm() + 1e-10, (project(domain, x) - project(domain, y)).norm()};
        },
        0.0, false, n);
  }
}

}  // namespace

bool LemmaReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

LemmaReport verify_lemmas(const LemmaOptions& options) {
  if (options.samples < 1 || options.projection_samples < 1) {
    throw std::invalid_argument("sample counts must be >= 1");
  }
  Suite s(options);
  lemma1(s);
  lemma2(s);
  lemma3(s);
  lemma6(s);
  lemma7(s);
  lemma8(s);
  hybrid(s);
  geometry(s);
  return s.take();
}

std::string to_json(const LemmaReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["passed"] = report.all_passed();
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["group"] = c.group;
    e["name"] = c.name;
    e["description"] = c.description;
    e["samples"] = c.samples;
    e["violations"] = c.violations;
    e["worst_slack"] = std::isfinite(c.worst_slack) ? nlohmann::ordered_json(c.worst_slack)
                                                    : nlohmann::ordered_json(nullptr);
    e["expect_violations"] = c.expect_violations;
    e["passed"] = c.passed;
    checks.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace tncopt::harness
