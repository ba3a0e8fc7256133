// Microbenchmarks for the hot paths: pairwise comparison, balanced sampling,
// moment evaluation, characteristic-function evaluation, and the parallel
// tournament driver. All inputs are seeded so runs are comparable.

#include <benchmark/benchmark.h>

#include "dicelab/charfn.hpp"
#include "dicelab/die.hpp"
#include "dicelab/gstats.hpp"
#include "dicelab/tournament.hpp"

namespace {

using namespace dicelab;

std::pair<Die, Die> seeded_pair(const IntervalSpec& spec, std::uint64_t seed) {
  RngStream rng(seed, 0);
  Die a = sample_balanced(spec, rng);
  Die b = sample_balanced(spec, rng);
  return {std::move(a), std::move(b)};
}

void BM_BeatsFast(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::symmetric(n), 1);
  for (auto _ : state) {
    const BeatsOutcome o = beats_fast(a, b);
    benchmark::DoNotOptimize(o.margin);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BeatsFast)->Arg(32)->Arg(101)->Arg(316)->Arg(1000)->Complexity();

void BM_BeatsNaive(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::symmetric(n), 1);
  for (auto _ : state) {
    const BeatsOutcome o = beats_naive(a, b);
    benchmark::DoNotOptimize(o.margin);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BeatsNaive)->Arg(32)->Arg(101)->Arg(316)->Arg(1000)->Complexity();

void BM_SampleBalanced(benchmark::State& state) {
  const int n = int(state.range(0));
  const IntervalSpec spec = IntervalSpec::symmetric(n);
  RngStream rng(2, 0);
  for (auto _ : state) {
    const Die d = sample_balanced(spec, rng);
    benchmark::DoNotOptimize(d.face_sum());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleBalanced)->Arg(32)->Arg(101)->Arg(316)->Arg(1000)->Complexity();

void BM_SupNormG(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::symmetric(n), 3);
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_g(a));
}
BENCHMARK(BM_SupNormG)->Arg(101)->Arg(1000);

void BM_MomentsClosedForm(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::symmetric(n), 4);
  for (auto _ : state) {
    const GMoments m = moments_closed_form(a, b);
    benchmark::DoNotOptimize(m.cv_ab);
  }
}
BENCHMARK(BM_MomentsClosedForm)->Arg(101)->Arg(1000);

void BM_MomentsQuadrature(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::symmetric(n), 4);
  for (auto _ : state) {
    const GMoments m = moments_quadrature(a, b);
    benchmark::DoNotOptimize(m.cv_ab);
  }
}
BENCHMARK(BM_MomentsQuadrature)->Arg(101)->Arg(1000);

void BM_FhatExact(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto [a, b] = seeded_pair(IntervalSpec::wide(n), 5);
  const double fa = 0.31 / n, fb = -0.17 / n, fg = 0.07 / n;
  for (auto _ : state) {
    const std::complex<double> v = fhat_exact(a, b, fa, fb, fg);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FhatExact)->Arg(32)->Arg(101)->Arg(316)->Complexity();

// Parallel scaling of the four-dice tournament at fixed total work; real time
// is the relevant axis. On a machine with >= 8 cores the 8-worker row should
// run at least 4x faster than the 1-worker row.
void BM_Tournament4Workers(benchmark::State& state) {
  const unsigned workers = unsigned(state.range(0));
  const IntervalSpec spec = IntervalSpec::symmetric(101);
  for (auto _ : state) {
    const TournamentEstimate est =
        estimate_tournament4(spec, 2000, 42, workers);
    benchmark::DoNotOptimize(est.degenerate);
  }
}
BENCHMARK(BM_Tournament4Workers)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
