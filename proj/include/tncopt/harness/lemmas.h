// Randomized property suites for the growth, convexity, Lipschitz and
// Gaussian-mass facts the algorithms rely on.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tncopt::harness {

struct LemmaCheck {
  std::string name;
  std::string group;  // e.g. "lemma2", "hybrid", "geometry"
  std::string description;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  // Smallest observed lhs - rhs of the checked inequality lhs >= rhs.
  double worst_slack = 0.0;
  // Some checks demonstrate that a stronger property fails; they pass when
  // at least one violation is found.
  bool expect_violations = false;
  bool passed = false;
};

struct LemmaOptions {
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  // Projection checks run Dykstra and use fewer samples.
  std::int64_t projection_samples = 10000;
};

struct LemmaReport {
  std::uint64_t seed = 0;
  std::vector<LemmaCheck> checks;
  bool all_passed() const;
};

LemmaReport verify_lemmas(const LemmaOptions& options);

std::string to_json(const LemmaReport& report);

}  // namespace tncopt::harness
