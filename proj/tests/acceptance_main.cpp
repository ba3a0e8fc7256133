// Runs the full acceptance checklist and prints one line per criterion.
// Exit status 0 iff every criterion passes.
//
// All statistical criteria run with pinned seeds and a fixed internal worker
// count, so any machine reproduces the same numbers. The final criterion
// times a real 1-vs-8-worker speedup and needs at least 4 physical cores to
// have a chance of passing.

#include <cstdio>
#include <string>
#include <vector>

#include "dicelab/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<dicelab::CriterionResult> results;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i)
      results.push_back(dicelab::run_criterion(std::atoi(argv[i])));
  } else {
    results = dicelab::run_acceptance();
  }

  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::printf("[%s] %2d %-28s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", int(results.size()) - failed,
              int(results.size()));
  return failed == 0 ? 0 : 1;
}
