#pragma once

#include <string>
#include <vector>

namespace dicelab {

// One acceptance criterion: a self-contained, seeded experiment with a hard
// pass/fail verdict. Thresholds live in the criterion implementations, not in
// the callers.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the full 13-criterion suite in order. Every statistical criterion pins
// its own seed and runs at a fixed worker count (8) so the numbers are
// reproducible on any machine, regardless of core count; only the final
// engineering criterion measures actual parallel speedup, which needs >= 4
// physical cores to reach its 4x target.
std::vector<CriterionResult> run_acceptance();

// Single criterion by id (1-based); throws OutOfRange for unknown ids.
CriterionResult run_criterion(int id);

}  // namespace dicelab
