#include "tncopt/harness/config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace tncopt::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  if (!v.empty() && (v.front() == '"' || v.back() == '"')) {
    throw ConfigError(std::string(key), "unterminated string " + std::string(v));
  }
  return std::string(v);
}

template <typename T>
T parse_number(std::string_view key, std::string_view raw) {
  const std::string text = unquote(key, raw);
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(key), "expected a number, got '" + text + "'");
  }
  return value;
}

std::vector<std::int64_t> parse_budgets(std::string_view key, std::string_view raw) {
  std::string_view v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError(std::string(key), "unterminated array");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::int64_t> out;
  while (!trim(v).empty()) {
    const auto comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(parse_number<std::int64_t>(key, item));
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError(std::string(key), "needs at least one budget");
  return out;
}

template <typename E, typename Parse>
E parse_enum(std::string_view key, std::string_view raw, Parse parse) {
  try {
    return parse(unquote(key, raw));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key), e.what());
  }
}

Scaling parse_scaling(const std::string& s) {
  if (s == "unit") return Scaling::kUnitLipschitz;
  if (s == "nominal") return Scaling::kNominal;
  throw std::invalid_argument("scaling must be 'unit' or 'nominal', got '" + s + "'");
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "epochgd") return Algorithm::kEpochGd;
  if (s == "bz") return Algorithm::kBz;
  throw std::invalid_argument("algorithm must be 'epochgd' or 'bz', got '" + s + "'");
}

BzSource parse_bz_source(const std::string& s) {
  if (s == "auto") return BzSource::kAuto;
  if (s == "bounded") return BzSource::kBounded;
  if (s == "power") return BzSource::kPower;
  if (s == "oracle") return BzSource::kOracle;
  throw std::invalid_argument("bz_source must be auto, bounded, power or oracle, got '" + s + "'");
}

}  // namespace

std::string_view to_string(Algorithm a) { return a == Algorithm::kEpochGd ? "epochgd" : "bz"; }

std::string_view to_string(BzSource s) {
  switch (s) {
    case BzSource::kAuto: return "auto";
    case BzSource::kBounded: return "bounded";
    case BzSource::kPower: return "power";
    case BzSource::kOracle: return "oracle";
  }
  return "auto";
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k(key);
  if (k == "function") {
    cfg.function = unquote(key, value);
  } else if (k == "kappa") {
    cfg.kappa = parse_number<double>(key, value);
  } else if (k == "dim") {
    cfg.dim = parse_number<int>(key, value);
  } else if (k == "a") {
    cfg.a = parse_number<double>(key, value);
  } else if (k == "domain") {
    cfg.domain = unquote(key, value);
  } else if (k == "scaling") {
    cfg.scaling = parse_enum<Scaling>(key, value, parse_scaling);
  } else if (k == "sigma") {
    cfg.sigma = parse_number<double>(key, value);
  } else if (k == "order") {
    cfg.order = parse_enum<OracleOrder>(key, value, [](const std::string& s) { return parse_order(s); });
  } else if (k == "oracle") {
    cfg.oracle = parse_enum<NoiseModel>(key, value,
                                        [](const std::string& s) { return parse_noise_model(s); });
  } else if (k == "clip_g") {
    cfg.clip_g = parse_number<double>(key, value);
  } else if (k == "algorithm") {
    cfg.algorithm = parse_enum<Algorithm>(key, value, parse_algorithm);
  } else if (k == "delta") {
    cfg.delta = parse_number<double>(key, value);
  } else if (k == "bz_source") {
    cfg.bz_source = parse_enum<BzSource>(key, value, parse_bz_source);
  } else if (k == "bz_margin") {
    cfg.bz_margin = parse_number<double>(key, value);
  } else if (k == "budgets") {
    cfg.budgets = parse_budgets(key, value);
  } else if (k == "trials") {
    cfg.trials = parse_number<int>(key, value);
  } else if (k == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (k == "out") {
    cfg.out = unquote(key, value);
  } else if (k == "threads") {
    cfg.threads = parse_number<int>(key, value);
  } else {
    throw ConfigError(k, "unknown key");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string_view key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "missing key");
    apply_setting(cfg, key, body.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in);
}

void validate(const ExperimentConfig& cfg) {
  const bool bz = cfg.algorithm == Algorithm::kBz;
  if (!(cfg.kappa >= 1.0) || (!bz && cfg.kappa == 1.0)) {
    throw ConfigError("kappa", bz ? "must be >= 1" : "must be > 1 for epochgd");
  }
  if (cfg.dim < 1) throw ConfigError("dim", "must be >= 1");
  if (!(cfg.sigma >= 0.0)) throw ConfigError("sigma", "must be >= 0");
  if (cfg.clip_g && !(*cfg.clip_g > 0.0)) throw ConfigError("clip_g", "must be positive");
  if (cfg.clip_g && cfg.oracle != NoiseModel::kGaussianClipped) {
    throw ConfigError("clip_g", "only applies to the gaussian-clipped oracle");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
  if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (cfg.threads < 0) throw ConfigError("threads", "must be >= 0");
  if (cfg.budgets.empty()) throw ConfigError("budgets", "needs at least one budget");
  for (std::size_t i = 0; i < cfg.budgets.size(); ++i) {
    if (cfg.budgets[i] < 1) throw ConfigError("budgets", "every budget must be >= 1");
    if (i > 0 && cfg.budgets[i] <= cfg.budgets[i - 1]) {
      throw ConfigError("budgets", "must be strictly increasing");
    }
  }
  if (cfg.order == OracleOrder::kZeroth) {
    throw ConfigError("order", "no optimizer consumes a zeroth-order oracle; use kl-sweep");
  }
  if (cfg.function != "f0" && cfg.function != "f1" && cfg.function != "hybrid") {
    throw ConfigError("function", "must be f0, f1 or hybrid, got '" + cfg.function + "'");
  }
  if (cfg.function == "f1" && !(cfg.a > 0.0 && 4.0 * cfg.a <= 1.0)) {
    throw ConfigError("a", "must satisfy 0 < 4a <= 1");
  }
  if (cfg.function == "hybrid" && (cfg.kappa != 2.0 || cfg.dim != 1)) {
    throw ConfigError("function", "hybrid is one-dimensional with kappa = 2");
  }
  if (!cfg.domain.empty() && cfg.domain != "standard" && cfg.domain != "box" &&
      cfg.domain != "ball" && cfg.domain != "centered") {
    throw ConfigError("domain", "must be standard, box, ball or centered");
  }
  if (bz) {
    if (cfg.dim != 1) throw ConfigError("dim", "bz runs are one-dimensional");
    const BzSource src = cfg.bz_source;
    if ((src == BzSource::kBounded || (src == BzSource::kAuto && cfg.kappa == 1.0)) &&
        !(cfg.bz_margin > 0.0 && cfg.bz_margin <= 0.5)) {
      throw ConfigError("bz_margin", "must lie in (0, 1/2]");
    }
    if ((src == BzSource::kPower || (src == BzSource::kAuto && cfg.kappa > 1.0)) &&
        !(cfg.sigma > 0.0)) {
      throw ConfigError("sigma", "power sign source needs sigma > 0");
    }
    if (src == BzSource::kOracle && cfg.kappa == 1.0) {
      throw ConfigError("bz_source", "oracle source needs a function with kappa > 1");
    }
  }
}

ConvexDomain make_domain(const ExperimentConfig& cfg) {
  const std::string kind = !cfg.domain.empty()          ? cfg.domain
                           : cfg.function == "hybrid" ? std::string("centered")
                                                        : std::string("standard");
  const int d = cfg.dim;
  if (kind == "standard") return ConvexDomain::StandardSet(d);
  if (kind == "box") return ConvexDomain::MakeBox(Point::Zero(d), Point::Ones(d));
  if (kind == "ball") return ConvexDomain::MakeBall(Point::Zero(d), 1.0);
  if (kind == "centered") return ConvexDomain::MakeBox(Point::Constant(d, -0.5), Point::Constant(d, 0.5));
  throw ConfigError("domain", "unknown domain '" + kind + "'");
}

KappaFunction make_function(const ExperimentConfig& cfg) {
  try {
    return tncopt::make_function(cfg.function, cfg.kappa, cfg.dim, cfg.a, cfg.scaling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("function", e.what());
  }
}

}  // namespace tncopt::harness
