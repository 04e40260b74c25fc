// Experiment configuration: a flat TOML-syntax key/value file whose keys can
// also be overridden one at a time (the CLI does this for its flags).
//
//   function = "f0"        # f0 | f1 | hybrid
//   kappa = 2.0
//   budgets = [1024, 2048, 4096]
//
// Strings may be quoted or bare; arrays hold integers only.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tncopt/functions.h"
#include "tncopt/geometry.h"
#include "tncopt/oracle.h"

namespace tncopt::harness {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Algorithm { kEpochGd, kBz };

// Sign source driving a BZ run.
//   kAuto:    bounded for kappa = 1, power otherwise.
//   kBounded: labels correct with probability 1/2 + bz_margin.
//   kPower:   sign of the gradient of |x - x*|^kappa plus N(0, sigma^2).
//   kOracle:  sign of the stochastic oracle's gradient for the 1-D `function`.
enum class BzSource { kAuto, kBounded, kPower, kOracle };

struct ExperimentConfig {
  std::string function = "f0";
  double kappa = 2.0;
  int dim = 2;
  double a = 0.0625;  // f1 separation
  // standard ([0,1]^d ∩ unit ball), box ([0,1]^d), ball (unit ball) or
  // centered ([-1/2,1/2]^d). Empty picks centered for the hybrid and
  // standard otherwise.
  std::string domain;
  Scaling scaling = Scaling::kUnitLipschitz;

  double sigma = 1.0;
  OracleOrder order = OracleOrder::kFirst;
  NoiseModel oracle = NoiseModel::kGaussianClipped;
  std::optional<double> clip_g;

  Algorithm algorithm = Algorithm::kEpochGd;
  double delta = 0.2;
  BzSource bz_source = BzSource::kAuto;
  double bz_margin = 0.3;

  std::vector<std::int64_t> budgets{1024};
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out = "out";
  int threads = 0;  // 0: hardware concurrency
};

// Sets one key from its textual value. Unknown keys and bad values throw
// ConfigError naming the key.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Cross-field checks (ranges, strictly increasing budgets, algorithm support).
void validate(const ExperimentConfig& cfg);

ConvexDomain make_domain(const ExperimentConfig& cfg);
KappaFunction make_function(const ExperimentConfig& cfg);

std::string_view to_string(Algorithm a);
std::string_view to_string(BzSource s);

}  // namespace tncopt::harness
