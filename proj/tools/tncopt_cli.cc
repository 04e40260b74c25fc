// tncopt: budget sweeps, single-algorithm runs, KL sweeps, lemma suites and
// plots from the command line.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tncopt/epochgd.h"
#include "tncopt/harness/config.h"
#include "tncopt/harness/lemmas.h"
#include "tncopt/harness/plot.h"
#include "tncopt/harness/rate_fit.h"
#include "tncopt/harness/sweep.h"
#include "tncopt/lowerbound.h"

namespace fs = std::filesystem;
using namespace tncopt;
using namespace tncopt::harness;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Flags shared by every subcommand; each one overrides the config key of the
// same name.
struct CommonFlags {
  std::string config;
  std::optional<std::string> kappa, dim, sigma, budgets, trials, seed, out, oracle, order;
  std::vector<std::string> settings;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "TOML key/value experiment file");
    app->add_option("--kappa", kappa, "growth exponent");
    app->add_option("--dim", dim, "dimension d");
    app->add_option("--sigma", sigma, "oracle noise level");
    app->add_option("--budgets", budgets, "comma-separated budgets T");
    app->add_option("--trials", trials, "trials per budget");
    app->add_option("--seed", seed, "base seed");
    app->add_option("--out", out, "output directory");
    app->add_option("--oracle", oracle, "gaussian-clipped | sphere-bounded");
    app->add_option("--order", order, "first | zeroth");
    app->add_option("--set", settings, "extra config override key=value (repeatable)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"kappa", &kappa}, {"dim", &dim},       {"sigma", &sigma},   {"budgets", &budgets},
        {"trials", &trials}, {"seed", &seed},   {"out", &out},       {"oracle", &oracle},
        {"order", &order}};
    for (const auto& [key, value] : flags) {
      if (*value) apply_setting(cfg, key, **value);
    }
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
      apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

std::string in_out(const ExperimentConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  return (fs::path(cfg.out) / name).string();
}

void print_summary(const std::vector<SweepRow>& rows) {
  std::printf("%10s %8s %16s %16s\n", "T", "trials", "mean f_error", "mean point_error");
  for (const auto& m : summarize(rows)) {
    std::printf("%10lld %8d %16.6e %16.6e\n", static_cast<long long>(m.T), m.trials, m.f_error,
                m.point_error);
  }
}

json fit_json(const LineFit& fit, std::optional<double> theory) {
  json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["residual_rms"] = fit.residual_rms;
  j["r_squared"] = fit.r_squared;
  j["slope_stderr"] = fit.slope_stderr;
  if (theory) j["theory"] = *theory;
  return j;
}

// Fits, plots and reports both error columns when there are enough budgets.
void fit_and_plot(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows) {
  if (cfg.budgets.size() < kMinRatePoints) {
    std::printf("fewer than %zu budgets: skipping rate fits\n", kMinRatePoints);
    return;
  }
  json report;
  const std::vector<BudgetMean> means = summarize(rows);
  std::vector<std::int64_t> budgets;
  for (const auto& m : means) budgets.push_back(m.T);

  if (cfg.kappa == 1.0) {
    // Exponential regime: ln error against T.
    for (auto column : {ErrorColumn::kFunction, ErrorColumn::kPoint}) {
      std::vector<double> errors;
      for (const auto& m : means) errors.push_back(column == ErrorColumn::kFunction ? m.f_error : m.point_error);
      const LineFit fit = fit_exponential(budgets, errors);
      const char* name = column == ErrorColumn::kFunction ? "f_error" : "point_error";
      report[name] = fit_json(fit, std::nullopt);
      std::printf("%-12s ln error vs T: slope %.6f  R^2 %.4f\n", name, fit.slope, fit.r_squared);
    }
  } else {
    for (auto column : {ErrorColumn::kFunction, ErrorColumn::kPoint}) {
      const RateFit fit = fit_rate(rows, column);
      const double theory = theory_slope(cfg.kappa, column);
      const char* name = column == ErrorColumn::kFunction ? "f_error" : "point_error";
      report[name] = fit_json(fit, theory);
      std::printf("%-12s slope %.4f (theory %.4f)  R^2 %.4f\n", name, fit.slope, theory, fit.r_squared);
      PlotOptions po;
      po.title = std::string(name) + ", kappa = " + json(cfg.kappa).dump() + ", d = " +
                 std::to_string(cfg.dim);
      po.y_label = std::string("mean ") + name;
      po.theory_slope = theory;
      emit_plot(fit, po, in_out(cfg, std::string(name) + ".svg"));
    }
  }
  write_text(in_out(cfg, "fit.json"), report.dump(2) + "\n");
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& csv_name, bool fit) {
  const std::vector<SweepRow> rows = sweep(cfg);
  const std::string path = in_out(cfg, csv_name);
  write_csv(path, rows);
  print_summary(rows);
  if (fit) fit_and_plot(cfg, rows);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_run_epochgd(ExperimentConfig cfg) {
  cfg.algorithm = Algorithm::kEpochGd;
  validate(cfg);
  const KappaFunction f = harness::make_function(cfg);
  OracleConfig oc;
  oc.sigma = cfg.sigma;
  oc.clip_g = cfg.clip_g;
  oc.noise = cfg.oracle;
  const double g = StochasticOracle(f, oc).gradient_bound();
  json schedules = json::array();
  for (auto t : cfg.budgets) {
    const EpochSchedule s = compute_constants(cfg.kappa, f.lambda_growth(), g, cfg.delta, t);
    json j;
    j["T"] = t;
    j["epochs"] = s.epochs;
    j["C0"] = s.c0;
    j["C1"] = s.c1;
    j["C2"] = s.c2;
    j["lengths"] = s.lengths;
    j["steps"] = s.steps;
    j["radii"] = s.radii;
    j["queries"] = s.total_queries();
    j["error_bound"] = s.function_error_bound();
    schedules.push_back(j);
    std::printf("T=%lld: E=%d C0=%lld queries=%lld bound C2*eta_{E+1}=%.4e\n",
                static_cast<long long>(t), s.epochs, static_cast<long long>(s.c0),
                static_cast<long long>(s.total_queries()), s.function_error_bound());
  }
  write_text(in_out(cfg, "schedule.json"), schedules.dump(2) + "\n");
  return cmd_sweep(cfg, "epochgd.csv", false);
}

int cmd_run_bz(ExperimentConfig cfg, bool dim_given) {
  cfg.algorithm = Algorithm::kBz;
  if (!dim_given) cfg.dim = 1;
  return cmd_sweep(cfg, "bz.csv", cfg.budgets.size() >= kMinRatePoints);
}

int cmd_kl_sweep(const ExperimentConfig& cfg, double a_min, double a_max, int points) {
  if (!(a_min > 0.0 && a_max > a_min && 4.0 * a_max <= 1.0)) {
    throw ConfigError("a", "need 0 < a-min < a-max <= 1/4");
  }
  if (points < 2) throw ConfigError("points", "need at least 2");
  if (!(cfg.kappa > 1.0)) throw ConfigError("kappa", "must be > 1");
  if (!(cfg.sigma > 0.0)) throw ConfigError("sigma", "must be positive");
  const std::int64_t t = cfg.budgets.front();
  const bool zeroth = cfg.order == OracleOrder::kZeroth;

  std::vector<double> as, kls;
  std::string csv = "a,kl_first,kl_zeroth,fano\n";
  for (int i = 0; i < points; ++i) {
    const double a = a_min * std::pow(a_max / a_min, static_cast<double>(i) / (points - 1));
    const double first = kl_first_order(cfg.kappa, cfg.dim, a, cfg.sigma, t);
    const double zero = kl_zeroth_order(cfg.kappa, cfg.dim, a, cfg.sigma, t);
    char line[160];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", a, first, zero,
                  fano_bound(zeroth ? zero : first));
    csv += line;
    as.push_back(a);
    kls.push_back(zeroth ? zero : first);
  }
  const std::string path = in_out(cfg, "kl.csv");
  write_text(path, csv);
  std::vector<double> la, lk;
  for (std::size_t i = 0; i < as.size(); ++i) {
    la.push_back(std::log(as[i]));
    lk.push_back(std::log(kls[i]));
  }
  const LineFit fit = fit_line(la, lk);
  const double theory = zeroth ? 2.0 * cfg.kappa : 2.0 * cfg.kappa - 2.0;
  std::printf("%s-order KL vs a: slope %.4f (theory %.4f)\n", zeroth ? "zeroth" : "first", fit.slope,
              theory);
  PlotOptions po;
  po.title = std::string(zeroth ? "zeroth" : "first") + "-order KL, T = " + std::to_string(t);
  po.x_label = "a";
  po.y_label = "KL";
  po.theory_slope = theory;
  write_text(in_out(cfg, "kl.svg"), render_svg(as, kls, po));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_verify_lemmas(const ExperimentConfig& cfg, std::int64_t samples,
                      std::int64_t projection_samples) {
  LemmaOptions opts;
  opts.seed = cfg.seed;
  opts.samples = samples;
  opts.projection_samples = projection_samples;
  const LemmaReport report = verify_lemmas(opts);
  int failed = 0;
  for (const auto& c : report.checks) {
    if (!c.passed) {
      ++failed;
      std::printf("FAIL %-8s %-40s violations=%lld worst_slack=%.3e\n", c.group.c_str(),
                  c.name.c_str(), static_cast<long long>(c.violations), c.worst_slack);
    }
  }
  const std::string path = in_out(cfg, "lemmas.json");
  write_text(path, to_json(report));
  std::printf("%zu checks, %d failed; wrote %s\n", report.checks.size(), failed, path.c_str());
  return failed == 0 ? 0 : kExitFailure;
}

int cmd_plot(const ExperimentConfig& cfg, const std::string& csv, const std::string& column,
             std::optional<double> theory, std::string output) {
  ErrorColumn col;
  if (column == "f_error") {
    col = ErrorColumn::kFunction;
  } else if (column == "point_error") {
    col = ErrorColumn::kPoint;
  } else {
    throw ConfigError("column", "must be f_error or point_error");
  }
  const std::vector<SweepRow> rows = read_csv(csv);
  if (rows.empty()) throw std::runtime_error("'" + csv + "' has no rows");
  PlotOptions po;
  po.title = column + ", kappa = " + json(rows.front().kappa).dump();
  po.y_label = "mean " + column;
  if (theory) {
    po.theory_slope = theory;
  } else if (rows.front().kappa > 1.0) {
    po.theory_slope = theory_slope(rows.front().kappa, col);
  }
  if (output.empty()) output = in_out(cfg, column + ".svg");
  emit_plot(rows, col, po, output);
  std::printf("wrote %s\n", output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic convex optimization under Tsybakov-type growth"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* rate = app.add_subcommand("rate-sweep", "budget sweep with rate fits and plots");
  auto* epoch = app.add_subcommand("run-epochgd", "EpochGD runs and their schedules");
  auto* bz = app.add_subcommand("run-bz", "noisy-bisection runs in one dimension");
  auto* kl = app.add_subcommand("kl-sweep", "KL divergence of the f0/f1 pair against a");
  auto* lemmas = app.add_subcommand("verify-lemmas", "randomized property suites");
  auto* plot = app.add_subcommand("plot", "log-log SVG from a sweep CSV");
  for (auto* sub : {rate, epoch, bz, kl, lemmas, plot}) flags.attach(sub);

  double a_min = 1e-3, a_max = 1e-2;
  int points = 8;
  kl->add_option("--a-min", a_min, "smallest separation");
  kl->add_option("--a-max", a_max, "largest separation");
  kl->add_option("--points", points, "number of separations");

  std::int64_t samples = 100000, projection_samples = 10000;
  lemmas->add_option("--samples", samples, "samples per check");
  lemmas->add_option("--projection-samples", projection_samples, "samples per projection check");

  std::string csv, column = "f_error", output;
  std::optional<double> theory;
  plot->add_option("--csv", csv, "sweep CSV")->required();
  plot->add_option("--column", column, "f_error | point_error");
  plot->add_option("--theory", theory, "reference slope (default from kappa)");
  plot->add_option("--output", output, "SVG path (default <out>/<column>.svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = flags.resolve();
    if (rate->parsed()) return cmd_sweep(cfg, "sweep.csv", true);
    if (epoch->parsed()) return cmd_run_epochgd(cfg);
    if (bz->parsed()) return cmd_run_bz(cfg, flags.dim.has_value());
    if (kl->parsed()) return cmd_kl_sweep(cfg, a_min, a_max, points);
    if (lemmas->parsed()) return cmd_verify_lemmas(cfg, samples, projection_samples);
    if (plot->parsed()) return cmd_plot(cfg, csv, column, theory, output);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
