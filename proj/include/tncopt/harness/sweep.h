// Budget sweeps: trials x budgets independent runs, merged in (T, trial) order.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tncopt/harness/config.h"

namespace tncopt::harness {

struct SweepRow {
  double kappa = 0.0;
  int d = 0;
  double sigma = 0.0;
  std::int64_t T = 0;
  int trial = 0;
  double f_error = 0.0;
  double point_error = 0.0;
  std::int64_t queries_used = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "kappa,d,sigma,T,trial,f_error,point_error,queries_used,seed";

// Seed of trial `trial` at budget T under base seed `base`.
std::uint64_t trial_seed(std::uint64_t base, std::int64_t budget, int trial);

// One run at budget T. Validates nothing; call validate() first.
SweepRow run_trial(const ExperimentConfig& cfg, std::int64_t budget, int trial);

// Validates cfg, then runs every (T, trial) pair on cfg.threads workers.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);
std::vector<SweepRow> read_csv(const std::string& path);

struct BudgetMean {
  std::int64_t T = 0;
  double f_error = 0.0;
  double point_error = 0.0;
  int trials = 0;
};

// Mean errors per budget, in increasing T.
std::vector<BudgetMean> summarize(const std::vector<SweepRow>& rows);

}  // namespace tncopt::harness
