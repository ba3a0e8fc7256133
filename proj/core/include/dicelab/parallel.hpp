#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "dicelab/errors.hpp"
#include "dicelab/rng.hpp"

namespace dicelab {

// Mergeable worker state: default-constructible plus merge(const S&).
template <typename S>
concept MergeableState = requires(S s, const S& o) {
  S{};
  s.merge(o);
};

// Runs `trials` independent trials split into fixed contiguous blocks, one
// block per worker. Worker w draws from stream (seed, w) and owns a private
// State; states merge in worker-index order after all joins, so the result is
// bit-identical for a fixed (seed, workers) regardless of scheduling. The
// trial function must be a pure function of (state, rng, trial_index).
//
// Changing `workers` reassigns which stream generates which trial, so merged
// floating-point moments can differ across worker counts (pure counting
// states do not: every (seed, w) block is still an independent sample).
template <MergeableState State, typename TrialFn>
State run_parallel(std::int64_t trials, unsigned workers, std::uint64_t seed,
                   TrialFn&& trial) {
  if (trials < 1) throw OutOfRange("run_parallel: trials must be >= 1");
  if (workers < 1) throw OutOfRange("run_parallel: workers must be >= 1");
  if (std::int64_t(workers) > trials) workers = unsigned(trials);

  std::vector<State> states(workers);
  std::vector<std::exception_ptr> failures(workers);

  const std::int64_t block = trials / workers;
  const std::int64_t rem = trials % workers;
  auto worker_body = [&](unsigned w) {
    // Worker w gets [start, stop); the first `rem` workers take one extra.
    const std::int64_t start = w * block + std::min<std::int64_t>(w, rem);
    const std::int64_t stop = start + block + (std::int64_t(w) < rem ? 1 : 0);
    try {
      RngStream rng(seed, w);
      for (std::int64_t t = start; t < stop; ++t) trial(states[w], rng, t);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    worker_body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_body, w);
    for (auto& th : pool) th.join();
  }

  for (unsigned w = 0; w < workers; ++w) {
    if (failures[w]) {
      try {
        std::rethrow_exception(failures[w]);
      } catch (const std::exception& e) {
        throw TaskFailure(w, e.what());
      } catch (...) {
        throw TaskFailure(w, "unknown exception");
      }
    }
  }

  State merged = std::move(states[0]);
  for (unsigned w = 1; w < workers; ++w) merged.merge(states[w]);
  return merged;
}

}  // namespace dicelab
