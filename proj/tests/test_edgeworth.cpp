#include <doctest.h>

#include <cmath>
#include <vector>

#include "dicelab/edgeworth.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/interval.hpp"
#include "dicelab/quadrature.hpp"

using namespace dicelab;

namespace {

const double kInvSqrt2Pi = 0.39894228040143267794;

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Exact integral of an IrwinHall density via Gauss-Legendre panels between
// consecutive breakpoints; within a panel the density is a polynomial of
// degree n-1 <= 39, integrated exactly by 32 nodes.
double ih_integral(const IrwinHall& f) {
  const auto& bp = f.breakpoints();
  const auto& xs = gl_nodes(32);
  const auto& ws = gl_weights(32);
  double total = 0.0;
  for (size_t j = 0; j + 1 < bp.size(); ++j) {
    const double mid = 0.5 * (bp[j] + bp[j + 1]);
    const double half = 0.5 * (bp[j + 1] - bp[j]);
    double panel = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
      panel += ws[i] * f(mid + half * xs[i]);
    total += panel * half;
  }
  return total;
}

}  // namespace

TEST_CASE("probabilists hermite polynomials") {
  const double x = 1.3;
  CHECK(hermite(0, x) == 1.0);
  CHECK(hermite(1, x) == x);
  CHECK(hermite(2, x) == doctest::Approx(x * x - 1.0).epsilon(1e-15));
  CHECK(hermite(3, x) == doctest::Approx(x * x * x - 3.0 * x).epsilon(1e-15));
  CHECK(hermite(4, x) ==
        doctest::Approx(((x * x - 6.0) * x * x) + 3.0).epsilon(1e-14));
  CHECK(hermite(6, 0.0) == doctest::Approx(-15.0).epsilon(1e-14));
  CHECK(hermite(8, 0.0) == doctest::Approx(105.0).epsilon(1e-14));
  CHECK_THROWS_AS(hermite(-1, 0.0), OutOfRange);
}

TEST_CASE("cumulants of the centered unit-variance uniform") {
  const CumulantSet c = CumulantSet::uniform_symmetric();
  CHECK(c.gamma(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.gamma(3) == 0.0);
  CHECK(c.gamma(4) == doctest::Approx(-6.0 / 5.0).epsilon(1e-15));
  CHECK(c.gamma(6) == doctest::Approx(48.0 / 7.0).epsilon(1e-15));
  CHECK(c.gamma(8) == doctest::Approx(-432.0 / 5.0).epsilon(1e-15));
  CHECK(c.gamma(10) == doctest::Approx(20736.0 / 11.0).epsilon(1e-15));
  CHECK(c.big_gamma(4) == doctest::Approx(-1.0 / 20.0).epsilon(1e-15));
  CHECK(c.big_gamma(6) == doctest::Approx(1.0 / 105.0).epsilon(1e-15));
  CHECK(c.big_gamma(8) == doctest::Approx(-3.0 / 1400.0).epsilon(1e-15));
  CHECK(c.big_gamma(10) == doctest::Approx(1.0 / 1925.0).epsilon(1e-15));
}

TEST_CASE("expansion terms: odd orders vanish, even orders are explicit") {
  for (double x : {-2.7, -0.4, 0.0, 1.1, 3.0}) {
    CHECK(q_nu(1, x) == doctest::Approx(0.0));
    CHECK(q_nu(3, x) == doctest::Approx(0.0));
    const double q2 = phi(x) * (-1.0 / 20.0) * hermite(4, x);
    CHECK(q_nu(2, x) == doctest::Approx(q2).epsilon(1e-13));
    const double q4 = phi(x) * (hermite(6, x) / 105.0 +
                                0.5 * (1.0 / 400.0) * hermite(8, x));
    CHECK(q_nu(4, x) == doctest::Approx(q4).epsilon(1e-12));
  }
  CHECK_THROWS_AS(q_nu(0, 0.0), OutOfRange);
  CHECK_THROWS_AS(q_nu(9, 0.0), OutOfRange);
}

TEST_CASE("density expansion reduces to the normal at order 0") {
  for (double x : {-1.5, 0.0, 0.8}) {
    CHECK(edgeworth_density(12, x, 0) == doctest::Approx(phi(x)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(edgeworth_density(12, 0.0, 1), OutOfRange);
  CHECK_THROWS_AS(edgeworth_density(12, 0.0, 6), OutOfRange);
}

TEST_CASE("density expansions integrate to one") {
  // Corrections are Hermite-times-Gaussian terms whose integrals vanish, so
  // each order keeps total mass 1; the trapezoid tail truncation is far below
  // the tolerance.
  for (int order : {0, 2, 4}) {
    const int steps = 200000;
    const double lo = -12.0, hi = 12.0;
    const double h = (hi - lo) / steps;
    double s = 0.5 * (edgeworth_density(9, lo, order) +
                      edgeworth_density(9, hi, order));
    for (int i = 1; i < steps; ++i)
      s += edgeworth_density(9, lo + h * double(i), order);
    CHECK(s * h == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("exact density of a sum of two is the triangle") {
  const IrwinHall f(2);
  const double top = 2.0 * kSqrt3;
  CHECK(f(0.0) == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-14));
  CHECK(f(1.0) == doctest::Approx((top - 1.0) / 12.0).epsilon(1e-13));
  CHECK(f(-1.0) == doctest::Approx(f(1.0)).epsilon(1e-13));
  CHECK(f(top) == doctest::Approx(0.0));
  CHECK(f(top + 0.5) == 0.0);
  CHECK(f(-top - 0.5) == 0.0);
}

TEST_CASE("exact sum densities integrate to one and are symmetric") {
  for (int n : {2, 3, 5, 8, 12, 21, 40}) {
    const IrwinHall f(n);
    CHECK(ih_integral(f) == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : {0.3, 1.7, 0.41 * double(n)}) {
      CHECK(f(x) == doctest::Approx(f(-x)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(IrwinHall(1), UnsupportedN);
  CHECK_THROWS_AS(IrwinHall(41), UnsupportedN);
  CHECK(irwin_hall_density(6, 0.5) == doctest::Approx(IrwinHall(6)(0.5)));
}

TEST_CASE("normalized exact density approaches the normal") {
  // sup |sqrt(n) f_n(x sqrt n) - phi(x)| decays like 1/n; check the trend.
  auto sup_gap = [](int n) {
    const IrwinHall f(n);
    const double rn = std::sqrt(double(n));
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double x = -3.0 + 6.0 * double(i) / 300.0;
      worst = std::max(worst, std::abs(rn * f(x * rn) - phi(x)));
    }
    return worst;
  };
  const double g10 = sup_gap(10);
  const double g40 = sup_gap(40);
  CHECK(g40 < g10);
  CHECK(g40 <= 0.35 * g10);  // roughly 1/n decay
}

TEST_CASE("scaled density agrees with its polynomial form") {
  // At x = 0 the two expressions coincide term by term.
  for (int n : {10, 100, 5000}) {
    CHECK(scaled_density(n, 0.0, 4) ==
          doctest::Approx(scaled_density_poly(n, 0.0)).epsilon(1e-13));
  }
  // Away from 0 they differ only in n^-3 and smaller terms.
  for (double x : {0.5, 1.0, 2.0}) {
    const double a = scaled_density(1000, x, 4);
    const double b = scaled_density_poly(1000, x);
    CHECK(std::abs(a - b) <= 1e-8);
  }
  // And the scaled density is just the normalized expansion.
  CHECK(scaled_density(25, 0.7, 2) ==
        doctest::Approx(edgeworth_density(25, 0.7 / 5.0, 2) / 5.0)
            .epsilon(1e-14));
}

TEST_CASE("closed-form correction factors") {
  const int n = 20;
  const double x = 1.4;
  // First order: 1 + k/(2n) - x^2/(2n) for every supported k.
  for (int k : {1, 2, 3, 4}) {
    const double expect = 1.0 + 0.5 * double(k) / n - 0.5 * x * x / n;
    CHECK(correction_factor_closed(n, k, x, CorrectionOrder::OneOverN) ==
          doctest::Approx(expect).epsilon(1e-14));
  }
  // Second order adds the k-specific n^-2 polynomial.
  const double n2 = double(n) * double(n);
  const double e1 = 1.0 + 0.5 / n - 0.5 * x * x / n +
                    (9.0 / 40.0 - 9.0 * x * x / 20.0 +
                     x * x * x * x / 8.0) / n2;
  CHECK(correction_factor_closed(n, 1, x, CorrectionOrder::OneOverN2) ==
        doctest::Approx(e1).epsilon(1e-13));
  const double e2 = 1.0 + 1.0 / n - 0.5 * x * x / n +
                    (6.0 / 5.0 - 6.0 * x * x / 5.0 +
                     x * x * x * x / 8.0) / n2;
  CHECK(correction_factor_closed(n, 2, x, CorrectionOrder::OneOverN2) ==
        doctest::Approx(e2).epsilon(1e-13));
  CHECK_THROWS_AS(correction_factor_closed(n, 3, x, CorrectionOrder::OneOverN2),
                  UnsupportedK);
  CHECK_THROWS_AS(correction_factor_closed(n, 4, x, CorrectionOrder::OneOverN2),
                  UnsupportedK);
  CHECK_THROWS_AS(correction_factor_closed(n, 5, x, CorrectionOrder::OneOverN),
                  UnsupportedK);
  CHECK_THROWS_AS(correction_factor_closed(3, 4, x, CorrectionOrder::OneOverN),
                  OutOfRange);
}

TEST_CASE("direct correction factor normalizer equals the density at zero") {
  // The normalizing constant is a k-fold convolution integral, which
  // collapses to the full n-face sum density evaluated at the origin.
  for (auto [n, k] : std::vector<std::pair<int, int>>{
           {10, 1}, {12, 2}, {9, 3}, {8, 4}, {36, 1}}) {
    const DirectCorrectionFactor p(n, k, DensityBackend::Exact);
    CHECK(p.normalizer() ==
          doctest::Approx(irwin_hall_density(n, 0.0)).epsilon(1e-9));
  }
}

TEST_CASE("direct and closed correction factors converge together") {
  // Discrepancy is O(n^-3) for the second-order closed form.
  for (int k : {1, 2}) {
    const DirectCorrectionFactor direct(36, k, DensityBackend::Exact);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.8 + 3.6 * double(i) / 100.0;
      worst = std::max(worst,
                       std::abs(direct(x) - correction_factor_closed(36, k, x)));
    }
    CHECK(worst <= 5e-4);
  }
}

TEST_CASE("edgeworth density backend tracks the exact one") {
  const DirectCorrectionFactor exact(31, 1, DensityBackend::Exact);
  const DirectCorrectionFactor edge(31, 1, DensityBackend::Edgeworth);
  for (double x : {-1.5, -0.3, 0.0, 0.9, 1.6}) {
    CHECK(edge(x) == doctest::Approx(exact(x)).epsilon(2e-4));
  }
  // Auto picks the exact backend whenever it is available.
  const DirectCorrectionFactor aut(31, 1, DensityBackend::Auto);
  CHECK(aut(0.7) == doctest::Approx(exact(0.7)).epsilon(1e-12));
  CHECK_THROWS_AS(DirectCorrectionFactor(60, 1, DensityBackend::Exact),
                  UnsupportedN);
  CHECK_NOTHROW(DirectCorrectionFactor(60, 1, DensityBackend::Auto));
}

TEST_CASE("conditional expectation of a constant is one") {
  // Closed-form weights integrate to 1 + O(n^-2) (first order is exact in
  // expectation); the direct backend is exact up to quadrature error.
  ConditionalOptions direct;
  direct.backend = ConditionalBackend::Direct;
  auto one = [](const double*) { return 1.0; };
  CHECK(conditional_expect(one, {1}, 30, direct) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(conditional_expect(one, {1, 1}, 30, direct) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(conditional_expect(one, {2}, 30, direct) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(conditional_expect(one, {1}, 50) == doctest::Approx(1.0).epsilon(5e-4));
  CHECK(conditional_expect(one, {4}, 50) == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("conditional expectation kills odd integrands") {
  auto odd = [](const double* x) { return x[0]; };
  CHECK(conditional_expect(odd, {1}, 24) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  auto odd3 = [](const double* x) { return x[0] * x[0] * x[0]; };
  CHECK(conditional_expect(odd3, {1}, 24) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("conditional second moment matches its closed expansion") {
  const int n = 30;
  const double dn = double(n);
  const double target = 1.0 - 2.0 / (5.0 * dn) - 18.0 / (175.0 * dn * dn);
  auto sq = [](const double* x) { return x[0] * x[0]; };
  const double closed = conditional_expect(sq, {1}, n);
  CHECK(closed == doctest::Approx(target).epsilon(1e-10));
  ConditionalOptions direct;
  direct.backend = ConditionalBackend::Direct;
  const double viadirect = conditional_expect(sq, {1}, n, direct);
  // The direct weight keeps the n^-3 tail the closed expansion drops.
  CHECK(viadirect == doctest::Approx(target).epsilon(3e-4));
  CHECK(std::abs(closed - viadirect) <= 3e-4);
}

TEST_CASE("conditional expectation input validation") {
  auto one = [](const double*) { return 1.0; };
  CHECK_THROWS_AS(conditional_expect(one, {}, 20), OutOfRange);
  CHECK_THROWS_AS(conditional_expect(one, {5}, 20), UnsupportedK);
  CHECK_THROWS_AS(conditional_expect(one, {4, 4, 1}, 20), OutOfRange);
}

TEST_CASE("the reference table of split integrals evaluates exactly") {
  const auto rows = simple_integrals_table();
  CHECK(rows.size() == 17);
  for (const auto& r : rows) {
    CAPTURE(r.name);
    CHECK(r.abs_err <= 1e-10);
    CHECK(r.pass);
    CHECK(r.quadrature == doctest::Approx(r.exact).epsilon(1e-9));
  }
}
