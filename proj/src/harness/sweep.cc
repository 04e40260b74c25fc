#include "tncopt/harness/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include "tncopt/bz.h"
#include "tncopt/epochgd.h"
#include "tncopt/random.h"

namespace tncopt::harness {
namespace {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

Interval unit_interval_image(const ExperimentConfig& cfg) {
  const ConvexDomain domain = make_domain(cfg);
  Interval iv{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& piece : domain.pieces()) {
    if (const auto* box = std::get_if<Box>(&piece)) {
      iv.lo = std::max(iv.lo, box->lower[0]);
      iv.hi = std::min(iv.hi, box->upper[0]);
    } else if (const auto* ball = std::get_if<Ball>(&piece)) {
      iv.lo = std::max(iv.lo, ball->center[0] - ball->radius);
      iv.hi = std::min(iv.hi, ball->center[0] + ball->radius);
    }
  }
  return iv;
}

SweepRow run_epochgd(const ExperimentConfig& cfg, std::int64_t budget, std::uint64_t seed) {
  const KappaFunction f = make_function(cfg);
  const ConvexDomain domain = make_domain(cfg);
  OracleConfig oc;
  oc.order = cfg.order;
  oc.sigma = cfg.sigma;
  oc.budget = budget;
  oc.seed = seed;
  oc.clip_g = cfg.clip_g;
  oc.noise = cfg.oracle;
  StochasticOracle oracle(f, oc, domain);
  const EpochSchedule schedule =
      compute_constants(cfg.kappa, f.lambda_growth(), oracle.gradient_bound(), cfg.delta, budget);
  const RunResult r = run(oracle, domain, schedule, domain.center_point());
  return {cfg.kappa, cfg.dim, cfg.sigma, budget, 0, r.f_error, r.point_error, r.queries_used, seed};
}

SweepRow run_bz(const ExperimentConfig& cfg, std::int64_t budget, std::uint64_t seed) {
  BzSource src = cfg.bz_source;
  if (src == BzSource::kAuto) src = cfg.kappa == 1.0 ? BzSource::kBounded : BzSource::kPower;

  SweepRow row{cfg.kappa, 1, cfg.sigma, budget, 0, 0.0, 0.0, 0, seed};
  if (src == BzSource::kOracle) {
    const KappaFunction f = make_function(cfg);
    const Interval iv = unit_interval_image(cfg);
    const double width = iv.hi - iv.lo;
    OracleConfig oc;
    oc.sigma = cfg.sigma;
    oc.budget = budget;
    oc.seed = seed;
    oc.clip_g = cfg.clip_g;
    oc.noise = cfg.oracle;
    StochasticOracle oracle(f, oc, make_domain(cfg));
    // |g| >= lambda |x - x*|^{kappa-1} becomes lambda width^{kappa-1} |u - u*|^{kappa-1}.
    const double lambda_grad = f.lambda_growth() * std::pow(width, cfg.kappa - 1.0);
    const double margin = cfg.sigma > 0.0 ? label_margin(lambda_grad, cfg.sigma) : kMaxStepWeight;
    const BzResult r = bz_run(oracle_signs(oracle, iv.lo, iv.hi), cfg.kappa, margin, budget);
    const Point x_hat = Point::Constant(1, iv.lo + r.x_hat * width);
    row.f_error = f.value(x_hat) - f.f_star();
    row.point_error = (x_hat - f.x_star()).norm();
    row.queries_used = r.queries;
    return row;
  }

  // Synthetic sources place x* uniformly in [0.2, 0.8] and use f = |x - x*|^kappa.
  CounterRng placement(seed, 1);
  const double x_star = 0.2 + 0.6 * placement.uniform();
  BzResult r;
  if (src == BzSource::kBounded) {
    BoundedNoiseSigns signs(x_star, cfg.bz_margin, seed);
    r = bz_run(std::ref(signs), cfg.kappa, cfg.bz_margin, budget);
  } else {
    PowerGradientSigns signs(x_star, 1.0, cfg.kappa, cfg.sigma, seed);
    // |g(x)| = kappa |x - x*|^{kappa-1}.
    r = bz_run(std::ref(signs), cfg.kappa, label_margin(cfg.kappa, cfg.sigma), budget);
  }
  row.point_error = std::abs(r.x_hat - x_star);
  row.f_error = std::pow(row.point_error, cfg.kappa);
  row.queries_used = r.queries;
  return row;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::int64_t budget, int trial) {
  return derive_seed(base, static_cast<std::uint64_t>(budget), static_cast<std::uint64_t>(trial));
}

SweepRow run_trial(const ExperimentConfig& cfg, std::int64_t budget, int trial) {
  const std::uint64_t seed = trial_seed(cfg.seed, budget, trial);
  SweepRow row = cfg.algorithm == Algorithm::kBz ? run_bz(cfg, budget, seed)
                                                 : run_epochgd(cfg, budget, seed);
  row.trial = trial;
  return row;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.algorithm == Algorithm::kEpochGd) {
    // Surface an unusable budget before spawning workers.
    const KappaFunction f = make_function(cfg);
    OracleConfig oc;
    oc.sigma = cfg.sigma;
    oc.clip_g = cfg.clip_g;
    oc.noise = cfg.oracle;
    const double g = StochasticOracle(f, oc).gradient_bound();
    try {
      compute_constants(cfg.kappa, f.lambda_growth(), g, cfg.delta, cfg.budgets.front());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("budgets", e.what());
    }
  }

  const std::size_t per_budget = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cfg.budgets.size() * per_budget;
  std::vector<SweepRow> rows(total);

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        rows[i] = run_trial(cfg, cfg.budgets[i / per_budget], static_cast<int>(i % per_budget));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.kappa) << ',' << r.d << ',' << format_double(r.sigma) << ',' << r.T
        << ',' << r.trial << ',' << format_double(r.f_error) << ','
        << format_double(r.point_error) << ',' << r.queries_used << ',' << r.seed << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(out, rows);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error(std::string("CSV header must be '") + kCsvHeader + "'");
  }
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<std::string> cells;
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 9) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " fields, expected 9");
    }
    try {
      SweepRow r;
      r.kappa = std::stod(cells[0]);
      r.d = std::stoi(cells[1]);
      r.sigma = std::stod(cells[2]);
      r.T = std::stoll(cells[3]);
      r.trial = std::stoi(cells[4]);
      r.f_error = std::stod(cells[5]);
      r.point_error = std::stod(cells[6]);
      r.queries_used = std::stoll(cells[7]);
      r.seed = std::stoull(cells[8]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) + " has a malformed number");
    }
  }
  return rows;
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(in);
}

std::vector<BudgetMean> summarize(const std::vector<SweepRow>& rows) {
  std::map<std::int64_t, BudgetMean> by_t;
  for (const auto& r : rows) {
    BudgetMean& m = by_t[r.T];
    m.T = r.T;
    m.f_error += r.f_error;
    m.point_error += r.point_error;
    ++m.trials;
  }
  std::vector<BudgetMean> out;
  for (auto& [t, m] : by_t) {
    m.f_error /= m.trials;
    m.point_error /= m.trials;
    out.push_back(m);
  }
  return out;
}

}  // namespace tncopt::harness
