#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dicelab/die.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/interval.hpp"

using namespace dicelab;

TEST_CASE("interval presets and derived quantities") {
  const IntervalSpec u = IntervalSpec::unit(7);
  CHECK(u.z1 == 0.0);
  CHECK(u.z2 == 1.0);
  CHECK(u.length() == 1.0);
  CHECK(u.balance_target() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(u.var_h() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  const IntervalSpec w = IntervalSpec::wide(10);
  CHECK(w.z1 == 0.0);
  CHECK(w.z2 == 10.0);
  CHECK(w.balance_target() == doctest::Approx(50.0));
  CHECK(w.var_h() == doctest::Approx(100.0 / 12.0).epsilon(1e-15));

  const IntervalSpec s = IntervalSpec::symmetric(5);
  CHECK(s.z1 == doctest::Approx(-kSqrt3).epsilon(1e-16));
  CHECK(s.z2 == doctest::Approx(kSqrt3).epsilon(1e-16));
  CHECK(s.balance_target() == doctest::Approx(0.0));
  CHECK(s.var_h() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.is_symmetric());
  CHECK_FALSE(u.is_symmetric());

  CHECK_THROWS_AS(IntervalSpec(1.0, 1.0, 3), OutOfRange);
  CHECK_THROWS_AS(IntervalSpec(2.0, 1.0, 3), OutOfRange);
  CHECK_THROWS_AS(IntervalSpec(0.0, 1.0, 0), OutOfRange);
}

TEST_CASE("the classic four-die cycle has the exact margins") {
  const IntervalSpec sp(0.0, 6.0, 6);
  const Die a({0, 0, 4, 4, 4, 4}, sp, false);
  const Die b({3, 3, 3, 3, 3, 3}, sp, false);
  const Die c({2, 2, 2, 2, 6, 6}, sp, false);
  const Die d({1, 1, 1, 5, 5, 5}, sp, false);

  for (auto fn : {beats_naive, beats_fast}) {
    CHECK(fn(a, b).margin == 12);
    CHECK(fn(b, c).margin == 12);
    CHECK(fn(c, d).margin == 12);
    CHECK(fn(d, a).margin == 12);
    CHECK(fn(a, b).result == BeatsResult::FirstWins);
    // The two non-adjacent pairs: one dead draw, one reversal.
    CHECK(fn(b, d).margin == 0);
    CHECK(fn(b, d).result == BeatsResult::Draw);
    CHECK(fn(a, c).margin == -4);
    CHECK(fn(a, c).result == BeatsResult::SecondWins);
  }
}

TEST_CASE("three-die cycle with distinct integer faces") {
  const IntervalSpec sp(0.0, 10.0, 3);
  const Die a({2, 4, 9}, sp, false);
  const Die b({1, 6, 8}, sp, false);
  const Die c({3, 5, 7}, sp, false);
  CHECK(beats_fast(a, b).margin == 1);
  CHECK(beats_fast(b, c).margin == 1);
  CHECK(beats_fast(c, a).margin == 1);
}

TEST_CASE("fast and naive comparisons agree on random dice with ties") {
  RngStream rng(11, 0);
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + int(rng.next_u64() % 30);
    const IntervalSpec sp(0.0, 8.0, n);
    auto draw = [&](bool integer_faces) {
      std::vector<double> f;
      f.reserve(size_t(n));
      for (int i = 0; i < n; ++i)
        f.push_back(integer_faces ? double(rng.next_u64() % 9)
                                  : rng.uniform(0.0, 8.0));
      return Die(std::move(f), sp, false);
    };
    const bool ints = (t % 2) == 0;
    const Die a = draw(ints);
    const Die b = draw(ints);
    const BeatsOutcome ff = beats_fast(a, b);
    const BeatsOutcome nn = beats_naive(a, b);
    CHECK(ff.margin == nn.margin);
    CHECK(ff.result == nn.result);
  }
}

TEST_CASE("margin is antisymmetric") {
  RngStream rng(12, 0);
  const IntervalSpec sp(0.0, 5.0, 9);
  for (int t = 0; t < 50; ++t) {
    const Die a = sample_iid(sp, rng);
    const Die b = sample_iid(sp, rng);
    CHECK(beats_fast(a, b).margin == -beats_fast(b, a).margin);
  }
}

TEST_CASE("iid sampling stays in range and is deterministic per stream") {
  const IntervalSpec sp(-2.0, 3.0, 50);
  RngStream r1(77, 4);
  RngStream r2(77, 4);
  const Die a = sample_iid(sp, r1);
  const Die b = sample_iid(sp, r2);
  CHECK(a.faces() == b.faces());
  for (double f : a.faces()) {
    CHECK(f >= -2.0);
    CHECK(f <= 3.0);
  }
  RngStream r3(77, 5);
  CHECK(sample_iid(sp, r3).faces() != a.faces());
}

TEST_CASE("balanced sampling hits the target sum on every interval") {
  RngStream rng(5150, 0);
  for (const auto& sp : {IntervalSpec::unit(25), IntervalSpec::wide(25),
                         IntervalSpec::symmetric(25),
                         IntervalSpec(-1.5, 2.5, 40)}) {
    for (int t = 0; t < 20; ++t) {
      const Die d = sample_balanced(sp, rng);
      CHECK(d.is_balanced());
      CHECK(std::abs(d.face_sum() - sp.balance_target()) <=
            sp.balance_tolerance());
      for (double f : d.faces()) {
        CHECK(f >= sp.z1);
        CHECK(f <= sp.z2);
      }
    }
  }
}

TEST_CASE("balanced sampling throws when the attempt budget is too small") {
  // With max_attempts = 1 on a large die, rejection is nearly certain.
  const IntervalSpec sp = IntervalSpec::unit(4000);
  RngStream rng(8, 0);
  bool threw = false;
  for (int t = 0; t < 16 && !threw; ++t) {
    try {
      sample_balanced(sp, rng, 1);
    } catch (const AttemptsExhausted&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("rescale maps intervals affinely and preserves margins") {
  RngStream rng(31, 0);
  const IntervalSpec src = IntervalSpec::unit(15);
  const IntervalSpec dst = IntervalSpec::symmetric(15);
  const Die a = sample_balanced(src, rng);
  const Die b = sample_balanced(src, rng);
  const Die ra = rescale(a, dst);
  const Die rb = rescale(b, dst);
  CHECK(ra.is_balanced());
  CHECK(std::abs(ra.face_sum() - dst.balance_target()) <=
        dst.balance_tolerance());
  CHECK(beats_fast(ra, rb).margin == beats_fast(a, b).margin);
  // Endpoints map to endpoints.
  const Die ends(std::vector<double>{0.0, 1.0}, IntervalSpec(0.0, 1.0, 2),
                 false);
  const Die rends = rescale(ends, IntervalSpec(-kSqrt3, kSqrt3, 2));
  CHECK(rends.faces()[0] == doctest::Approx(-kSqrt3).epsilon(1e-15));
  CHECK(rends.faces()[1] == doctest::Approx(kSqrt3).epsilon(1e-15));
}

TEST_CASE("face counting function is the exact staircase") {
  const IntervalSpec sp(0.0, 10.0, 5);
  const Die a({1.0, 3.0, 3.0, 7.0, 9.0}, sp, false);
  CHECK(f_count(a, -1.0) == 0);
  CHECK(f_count(a, 0.0) == 0);
  CHECK(f_count(a, 0.999) == 0);
  CHECK(f_count(a, 1.0) == 1);
  CHECK(f_count(a, 2.9) == 1);
  CHECK(f_count(a, 3.0) == 3);
  CHECK(f_count(a, 6.9) == 3);
  CHECK(f_count(a, 7.0) == 4);
  CHECK(f_count(a, 9.0) == 5);
  CHECK(f_count(a, 10.0) == 5);
  CHECK(f_count(a, 11.0) == 5);
}

TEST_CASE("die constructor validates dimensions and range") {
  const IntervalSpec sp(0.0, 1.0, 3);
  CHECK_THROWS_AS(Die({0.1, 0.2}, sp, false), DimensionMismatch);
  CHECK_THROWS_AS(Die({0.1, 0.2, 1.5}, sp, false), OutOfRange);
  CHECK_THROWS_AS(Die({0.4, 0.4, 0.4}, sp, true), NotBalanced);
  // A genuinely balanced triple is accepted with the balanced flag.
  CHECK_NOTHROW(Die({0.5, 0.4, 0.6}, sp, true));
}

TEST_CASE("sorted faces are ascending and preserve multiset") {
  RngStream rng(451, 0);
  const IntervalSpec sp(0.0, 4.0, 33);
  const Die a = sample_iid(sp, rng);
  std::vector<double> ref = a.faces();
  std::sort(ref.begin(), ref.end());
  CHECK(a.sorted_faces() == ref);
}
