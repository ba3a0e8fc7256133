#include <doctest.h>

#include <cmath>
#include <vector>

#include "dicelab/die.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/gstats.hpp"

using namespace dicelab;

namespace {

double frac_dist_to_half(double x) {
  const double r = std::remainder(x - 0.5, 1.0);
  return std::abs(r);
}

}  // namespace

TEST_CASE("g vanishes at the endpoints and jumps at faces") {
  const IntervalSpec sp = IntervalSpec::symmetric(4);
  RngStream rng(91, 0);
  const Die a = sample_balanced(sp, rng);
  CHECK(g_eval(a, sp.z2) == doctest::Approx(0.0).epsilon(1e-12));
  // At z1 no face can be strictly below, so g(z1) = f(z1) >= 0.
  CHECK(g_eval(a, sp.z1) >= 0.0);
  CHECK_THROWS_AS(g_eval(a, sp.z2 + 0.1), OutOfRange);
}

TEST_CASE("sum of g over opposing faces is half the margin") {
  RngStream rng(92, 0);
  const IntervalSpec sp = IntervalSpec::symmetric(7);
  for (int t = 0; t < 200; ++t) {
    const Die a = sample_balanced(sp, rng);
    const Die b = sample_balanced(sp, rng);
    const double s = sum_g(a, b);
    const auto m = beats_fast(b, a);
    CHECK(s == doctest::Approx(double(m.margin) / 2.0).epsilon(1e-9));
    CHECK((s > 0) == (m.result == BeatsResult::FirstWins));
  }
}

TEST_CASE("balanced odd-n sums of g are half-integers") {
  RngStream rng(93, 0);
  for (int n : {3, 7, 15, 41}) {
    const IntervalSpec sp = IntervalSpec::symmetric(n);
    for (int t = 0; t < 50; ++t) {
      const Die a = sample_balanced(sp, rng);
      const Die b = sample_balanced(sp, rng);
      CHECK(frac_dist_to_half(sum_g(a, b)) <= 1e-9);
    }
  }
}

TEST_CASE("sum_g validates its inputs") {
  RngStream rng(94, 0);
  const Die a = sample_balanced(IntervalSpec::symmetric(5), rng);
  const Die b = sample_balanced(IntervalSpec::symmetric(6), rng);
  const Die c = sample_balanced(IntervalSpec::unit(5), rng);
  CHECK_THROWS_AS(sum_g(a, b), DimensionMismatch);
  CHECK_THROWS_AS(sum_g(a, c), IntervalMismatch);
}

TEST_CASE("two-face balanced dice have fully hand-computable moments") {
  const IntervalSpec sp = IntervalSpec::symmetric(2);

  // Faces at the endpoints: with u = F(x) uniform on [0, 1], g = 1 - 2u, so
  // U is a deterministic linear function of the roll. Var U = 1/3,
  // Cov(U, V) = -sqrt3 Var U = -sqrt3/3, and conditioning on V kills all of
  // the variance: the conditional problem is degenerate.
  const Die edge({-kSqrt3, kSqrt3}, sp, true);
  // Faces at the quarter points u = 1/4, 3/4: piecewise integration gives
  // Var U = 1/12, Cov(U, V) = 1/(8 sqrt3), conditional variance
  // 1/12 - 1/192 = 5/64, and sup |g| = 1/2 attained at every jump.
  const Die quart({-kSqrt3 / 2.0, kSqrt3 / 2.0}, sp, true);

  for (bool closed : {false, true}) {
    CAPTURE(closed);
    const GMoments me =
        closed ? moments_closed_form(edge, edge) : moments_quadrature(edge, edge);
    CHECK(me.var_a == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(me.cv_a == doctest::Approx(-kSqrt3 / 3.0).epsilon(1e-12));
    CHECK(me.var_h == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(me.var_a_cond == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(me.cv_ab == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(me.sup_a == doctest::Approx(1.0).epsilon(1e-12));

    const GMoments mq = closed ? moments_closed_form(quart, quart)
                               : moments_quadrature(quart, quart);
    CHECK(mq.var_a == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(mq.cv_a == doctest::Approx(1.0 / (8.0 * kSqrt3)).epsilon(1e-12));
    CHECK(mq.var_a_cond == doctest::Approx(5.0 / 64.0).epsilon(1e-12));
    CHECK(mq.cv_ab == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(mq.sup_a == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("closed-form and quadrature moments agree on random pairs") {
  RngStream rng(95, 0);
  for (int n : {2, 3, 9, 40}) {
    const IntervalSpec sp = IntervalSpec::symmetric(n);
    for (int t = 0; t < 25; ++t) {
      const Die a = sample_balanced(sp, rng);
      const Die b = sample_balanced(sp, rng);
      const GMoments mq = moments_quadrature(a, b);
      const GMoments mc = moments_closed_form(a, b);
      const GMoments mn = moments_closed_form(a, b, /*use_naive_sums=*/true);
      for (auto pick : {+[](const GMoments& m) { return m.var_a; },
                        +[](const GMoments& m) { return m.var_b; },
                        +[](const GMoments& m) { return m.cv_ab; },
                        +[](const GMoments& m) { return m.cv_a; },
                        +[](const GMoments& m) { return m.cv_b; },
                        +[](const GMoments& m) { return m.var_a_cond; },
                        +[](const GMoments& m) { return m.cv_ab_cond; },
                        +[](const GMoments& m) { return m.rho_cond; }}) {
        CHECK(pick(mc) ==
              doctest::Approx(pick(mq)).epsilon(1e-9).scale(double(n)));
        CHECK(pick(mn) ==
              doctest::Approx(pick(mq)).epsilon(1e-9).scale(double(n)));
      }
    }
  }
}

TEST_CASE("monte carlo variance of U matches the exact moments") {
  RngStream rng(96, 0);
  const IntervalSpec sp = IntervalSpec::symmetric(6);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);
  const GMoments m = moments_quadrature(a, b);

  const int64_t trials = 200000;
  double su = 0, suu = 0, sv = 0, suv = 0, scross = 0, sb = 0;
  for (int64_t t = 0; t < trials; ++t) {
    const double v = rng.uniform(sp.z1, sp.z2);
    const double ua = g_eval(a, v);
    const double ub = g_eval(b, v);
    su += ua;
    suu += ua * ua;
    sv += v;
    suv += ua * v;
    sb += ub;
    scross += ua * ub;
  }
  const double n = double(trials);
  const double var_a_mc = suu / n - (su / n) * (su / n);
  const double cv_a_mc = suv / n - (su / n) * (sv / n);
  const double cv_ab_mc = scross / n - (su / n) * (sb / n);
  // 4-sigma bands with conservative scale estimates.
  CHECK(std::abs(var_a_mc - m.var_a) <= 4.0 * m.var_a / std::sqrt(n) * 3.0);
  CHECK(std::abs(cv_a_mc - m.cv_a) <= 0.05);
  CHECK(std::abs(cv_ab_mc - m.cv_ab) <= 4.0 * m.var_a / std::sqrt(n) * 3.0);
}

TEST_CASE("sup norm of g is attained and bounds a dense scan") {
  RngStream rng(97, 0);
  for (int n : {2, 3, 5, 23}) {
    const IntervalSpec sp = IntervalSpec::symmetric(n);
    for (int t = 0; t < 20; ++t) {
      const Die a = sample_balanced(sp, rng);
      const double sup = sup_norm_g(a);
      double scan = std::max(std::abs(g_eval(a, sp.z1)),
                             std::abs(g_eval(a, sp.z2)));
      for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform(sp.z1, sp.z2);
        scan = std::max(scan, std::abs(g_eval(a, x)));
      }
      // Candidate points: faces (jump tops) and just-left limits.
      double cand = scan;
      for (double f : a.faces()) {
        cand = std::max(cand, std::abs(g_eval(a, f)));
        const double left = std::nextafter(f, sp.z1);
        if (left >= sp.z1) cand = std::max(cand, std::abs(g_eval(a, left)));
      }
      CHECK(sup >= scan - 1e-12);
      CHECK(sup <= cand + 1e-9);
    }
  }
}

TEST_CASE("pairwise max sums: fast equals naive") {
  RngStream rng(98, 0);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + int(rng.next_u64() % 40);
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(rng.uniform(-2.0, 2.0));
      ys.push_back(rng.uniform(-2.0, 2.0));
    }
    const double naive = sum_max_pairs_naive(xs, ys);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double fast = sum_max_pairs(xs, ys);
    CHECK(fast == doctest::Approx(naive).epsilon(1e-12).scale(double(n * n)));
  }
}

TEST_CASE("conditional moments shrink the raw ones") {
  RngStream rng(99, 0);
  const IntervalSpec sp = IntervalSpec::symmetric(21);
  for (int t = 0; t < 40; ++t) {
    const Die a = sample_balanced(sp, rng);
    const Die b = sample_balanced(sp, rng);
    const GMoments m = moments_closed_form(a, b);
    CHECK(m.var_a_cond <= m.var_a + 1e-12);
    CHECK(m.var_b_cond <= m.var_b + 1e-12);
    CHECK(m.var_a_cond ==
          doctest::Approx(m.var_a - m.cv_a * m.cv_a / m.var_h).epsilon(1e-10));
    CHECK(std::abs(m.rho_cond) <= 1.0 + 1e-12);
  }
}
