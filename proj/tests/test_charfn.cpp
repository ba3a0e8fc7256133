#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dicelab/charfn.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/gstats.hpp"
#include "dicelab/quadrature.hpp"

using namespace dicelab;

namespace {

// Independent oracle: integrate e(alpha g_A + beta g_B + gamma (x - n/2))
// over [0, n] with Gauss-Legendre panels whose edges sit on the faces, so
// each panel sees a smooth (complex-exponential-of-affine) integrand. Only
// the panel decomposition is shared with the production code; the per-panel
// value comes from quadrature on g_eval instead of the closed phase/sinc
// formula.
std::complex<double> fhat_gl(const Die& a, const Die& b, double alpha,
                             double beta, double gamma) {
  const int n = a.n();
  std::vector<double> cuts{0.0, double(n)};
  cuts.insert(cuts.end(), a.sorted_faces().begin(), a.sorted_faces().end());
  cuts.insert(cuts.end(), b.sorted_faces().begin(), b.sorted_faces().end());
  std::sort(cuts.begin(), cuts.end());
  const auto& xs = gl_nodes(64);
  const auto& ws = gl_weights(64);
  std::complex<double> total = 0.0;
  for (size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double lo = cuts[j], hi = cuts[j + 1];
    if (hi - lo < 1e-15) continue;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (size_t i = 0; i < xs.size(); ++i) {
      const double x = mid + half * xs[i];
      const double phase = alpha * g_eval(a, x) + beta * g_eval(b, x) +
                           gamma * (x - 0.5 * double(n));
      total += ws[i] * half * unit_exp(phase);
    }
  }
  return total / double(n);
}

}  // namespace

TEST_CASE("characteristic function basics") {
  RngStream rng(301, 0);
  const IntervalSpec sp = IntervalSpec::wide(7);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);

  CHECK(fhat_exact(a, b, 0.0, 0.0, 0.0).real() == doctest::Approx(1.0));
  CHECK(fhat_exact(a, b, 0.0, 0.0, 0.0).imag() ==
        doctest::Approx(0.0).epsilon(1e-14));

  // With alpha = beta = 0 the dice drop out entirely.
  for (double gamma : {0.13, 0.4, 1.7}) {
    const std::complex<double> v = fhat_exact(a, b, 0.0, 0.0, gamma);
    const double expect = std::sin(std::numbers::pi * gamma * 7.0) /
                          (std::numbers::pi * gamma * 7.0);
    CHECK(v.real() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }

  // Conjugate symmetry and the trivial modulus bound.
  for (int t = 0; t < 100; ++t) {
    const double al = rng.uniform(-2.0, 2.0);
    const double be = rng.uniform(-2.0, 2.0);
    const double ga = rng.uniform(-2.0, 2.0);
    const std::complex<double> v = fhat_exact(a, b, al, be, ga);
    const std::complex<double> m = fhat_exact(a, b, -al, -be, -ga);
    CHECK(std::abs(v - std::conj(m)) <= 1e-12);
    CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("exact characteristic function matches panel quadrature") {
  RngStream rng(302, 0);
  const IntervalSpec sp = IntervalSpec::wide(5);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);
  for (int t = 0; t < 25; ++t) {
    const double al = rng.uniform(-1.5, 1.5);
    const double be = rng.uniform(-1.5, 1.5);
    const double ga = rng.uniform(-1.5, 1.5);
    const std::complex<double> ex = fhat_exact(a, b, al, be, ga);
    const std::complex<double> gl = fhat_gl(a, b, al, be, ga);
    CHECK(std::abs(ex - gl) <= 1e-9);
  }
}

TEST_CASE("characteristic function validates the dice") {
  RngStream rng(303, 0);
  const Die a = sample_balanced(IntervalSpec::wide(5), rng);
  const Die b = sample_balanced(IntervalSpec::wide(6), rng);
  const Die c = sample_balanced(IntervalSpec::symmetric(5), rng);
  CHECK_THROWS_AS(fhat_exact(a, b, 0.1, 0.1, 0.1), DimensionMismatch);
  CHECK_THROWS_AS(fhat_exact(a, c, 0.1, 0.1, 0.1), IntervalMismatch);
}

TEST_CASE("quadratic form and gaussian surrogate are consistent") {
  RngStream rng(304, 0);
  const IntervalSpec sp = IntervalSpec::wide(9);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);
  const GMoments m = moments_quadrature(a, b);
  const double q = q_form(m, 0.02, -0.01, 0.005);
  const double pi2 = 2.0 * std::numbers::pi * std::numbers::pi;
  const double byhand =
      pi2 * (0.02 * 0.02 * m.var_a + 0.01 * 0.01 * m.var_b +
             0.005 * 0.005 * 81.0 / 12.0 + 2.0 * 0.02 * -0.01 * m.cv_ab +
             2.0 * 0.02 * 0.005 * m.cv_a + 2.0 * -0.01 * 0.005 * m.cv_b);
  CHECK(q == doctest::Approx(byhand).epsilon(1e-12));
  CHECK(ghat(m, 9, 0.02, -0.01, 0.005) ==
        doctest::Approx(std::exp(-9.0 * q)).epsilon(1e-13));
}

TEST_CASE("first-order residual stays under its cubic bound") {
  const auto rep = check_qr_bound(8, 40, 31, 305);
  CHECK(rep.samples == 8 * 40);
  CHECK(rep.violations == 0);
  CHECK(rep.max_statistic <= 1.0);
}

TEST_CASE("inequality spot checks accept random inputs") {
  RngStream rng(306, 0);
  const IntervalSpec sp = IntervalSpec::wide(21);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);

  const auto lg = check_large_gamma(a, b, 500, rng);
  CHECK(lg.samples == 500);
  CHECK(lg.violations == 0);

  const auto lip = check_lipschitz(a, b, 300, rng);
  CHECK(lip.violations == 0);

  const auto fp = check_face_perturbation(a, b, 10, 0.05, 200, rng);
  CHECK(fp.violations == 0);

  const auto em = check_e_to_mod1(3000, rng);
  CHECK(em.violations == 0);

  const auto en = check_exp_nq(3000, rng);
  CHECK(en.violations == 0);
}

TEST_CASE("decay box: off-box grid values fall under the threshold") {
  DecayGridSpec grid;
  grid.alpha_points = 6;
  grid.beta_points = 6;
  grid.gamma_points = 6;
  const auto rep = check_decay_box(101, 10, grid, 307);
  CHECK(rep.n == 101);
  CHECK(int(rep.pairs.size()) == 10);
  CHECK(rep.threshold == doctest::Approx(1.0 - 10.0 * std::log(101.0) / 101.0)
                             .epsilon(1e-12));
  CHECK(rep.violating_fraction <= 0.1);
  for (const auto& p : rep.pairs) {
    CHECK(p.max_modulus <= 1.0 + 1e-12);
    CHECK(p.points > 0);
  }
}

TEST_CASE("distance to a lattice") {
  CHECK(dist_to_lattice(2.49, 1.0) == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(dist_to_lattice(-0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist_to_lattice(3.0, 1.0) == doctest::Approx(0.0));
  CHECK(dist_to_lattice(2.75, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(dist_to_lattice(1e9 + 0.25, 1.0) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("gaussian orthant probability") {
  CHECK(gaussian_orthant(0.0) == 0.25);
  CHECK(gaussian_orthant(1.0) == 0.5);
  CHECK(gaussian_orthant(-1.0) == 0.0);
  CHECK(gaussian_orthant(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(gaussian_orthant(-0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // Monotone increasing in rho.
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double rho = -1.0 + 2.0 * double(i) / 40.0;
    const double v = gaussian_orthant(rho);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(gaussian_orthant(1.5), OutOfRange);
}

TEST_CASE("conditional positivity comparison runs end to end") {
  RngStream rng(308, 0);
  const IntervalSpec sp = IntervalSpec::symmetric(31);
  const Die a = sample_balanced(sp, rng);
  const Die b = sample_balanced(sp, rng);
  CltCompareOptions opts;
  opts.workers = 2;
  const auto rep = conditional_clt_compare(a, b, 20000, 309, opts);
  CHECK(rep.n == 31);
  CHECK(rep.trials == 20000);
  CHECK(rep.lhs >= 0.0);
  CHECK(rep.lhs <= 1.0);
  CHECK(rep.lhs == doctest::Approx(double(rep.hits) / 20000.0));
  CHECK(std::abs(rep.rho_cond) <= 1.0);
  CHECK(rep.rhs == doctest::Approx(gaussian_orthant(rep.rho_cond)));
  CHECK(rep.difference == doctest::Approx(rep.lhs - rep.rhs));
  CHECK(rep.half_integral_checked);
  CHECK(rep.half_integral_ok);
  CHECK(rep.max_half_integral_err <= 1e-6);
  // Normal approximation at n=31 is already decent.
  CHECK(std::abs(rep.difference) <= 0.15);

  // Bitwise reproducible for fixed seed and workers.
  const auto rep2 = conditional_clt_compare(a, b, 20000, 309, opts);
  CHECK(rep2.hits == rep.hits);
  CHECK(rep2.rho_cond == rep.rho_cond);
}

TEST_CASE("conditional comparison validates its inputs") {
  RngStream rng(310, 0);
  const Die a = sample_balanced(IntervalSpec::symmetric(9), rng);
  const Die b = sample_balanced(IntervalSpec::symmetric(10), rng);
  const Die c = sample_iid(IntervalSpec::symmetric(9), rng);
  CHECK_THROWS_AS(conditional_clt_compare(a, b, 100, 1), DimensionMismatch);
  CHECK_THROWS_AS(conditional_clt_compare(a, c, 100, 1), NotBalanced);
}
