#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dicelab/die.hpp"
#include "dicelab/gstats.hpp"
#include "dicelab/rng.hpp"

namespace dicelab {

// e(x) = exp(2*pi*i*x); the argument is in whole turns.
std::complex<double> unit_exp(double x);

struct CharFnPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::complex<double> value{0.0, 0.0};
};

// Characteristic function fhat(alpha, beta, gamma) = E e(alpha U_A + beta U_B
// + gamma (V - n/2)) for a uniform roll V on [0, n], evaluated exactly: the
// staircases f_A, f_B are constant between consecutive faces, so each piece
// integrates in closed form. Requires both dice on the [0, n] interval
// (rescale first otherwise); the degenerate frequency gamma - alpha - beta = 0
// uses the analytic limit.
std::complex<double> fhat_exact(const Die& a, const Die& b, double alpha,
                                double beta, double gamma);

// Quadratic form Q = 2 pi^2 (alpha^2 Var_A + beta^2 Var_B + gamma^2 Var V
// + 2 alpha beta CV_AB + 2 alpha gamma CV_A + 2 beta gamma CV_B).
double q_form(const GMoments& m, double alpha, double beta, double gamma);

// Gaussian surrogate ghat = exp(-n Q).
double ghat(const GMoments& m, int n, double alpha, double beta, double gamma);

// fhat = 1 - Q + R: q from the exact second moments, r_actual = fhat - 1 + q,
// and the cubic sup-norm bound
// r_bound = 1200 (|alpha|^3 ||U_A||_inf^3 + |beta|^3 ||U_B||_inf^3
//                 + |gamma|^3 n^3/8).
struct QRDecomp {
  double q = 0.0;
  double r_bound = 0.0;
  std::complex<double> r_actual{0.0, 0.0};
};

QRDecomp qr_decompose(const Die& a, const Die& b, double alpha, double beta,
                      double gamma);

// Shared shape of the randomized inequality checks: `max_statistic` is the
// worst observed ratio of the checked quantity to its bound, so the bound
// holds on every sample iff max_statistic <= 1 and violations == 0.
struct ViolationReport {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double max_statistic = 0.0;
};

// |fhat| <= 1/|gamma - alpha - beta|, sampled over frequencies with
// |gamma - alpha - beta| >= 1.01. Statistic: |fhat| * |gamma - alpha - beta|.
ViolationReport check_large_gamma(const Die& a, const Die& b,
                                  std::int64_t samples, RngStream& rng);

// |fhat(alpha, beta, gamma) - fhat(alpha0, beta0, gamma)| <=
// 2 pi (|alpha - alpha0| ||U_A||_inf + |beta - beta0| ||U_B||_inf).
ViolationReport check_lipschitz(const Die& a, const Die& b,
                                std::int64_t samples, RngStream& rng);

// Moving one face of A by delta (|delta| <= epsilon) moves fhat by at most
// 2 |delta| / n, uniformly in the frequencies.
ViolationReport check_face_perturbation(const Die& a, const Die& b,
                                        int face_index, double epsilon,
                                        std::int64_t samples, RngStream& rng);

// (1/2)|e(t1) + e(t2)| <= 1 - d(t1 - t2, Z)^2 over random angle pairs.
ViolationReport check_e_to_mod1(std::int64_t samples, RngStream& rng);

// For Q real, R complex with Q^2, |R| <= 1/100n: both ratio gaps
// |1 - (1-Q+R)^n / exp(-nQ)| and |1 - exp(-nQ) / (1-Q+R)^n| are at most
// 40 n (Q^2 + |R|), over random (n, Q, R).
ViolationReport check_exp_nq(std::int64_t samples, RngStream& rng);

// |R| <= r_bound over random balanced die pairs at size n and random
// frequencies with |alpha|, |beta|, |gamma| <= 1/n.
ViolationReport check_qr_bound(std::int64_t die_pairs,
                               std::int64_t freqs_per_pair, int n,
                               std::uint64_t seed);

// Axis-aligned frequency grid spanning [-max, max] per coordinate.
struct DecayGridSpec {
  int alpha_points = 10;
  int beta_points = 10;
  int gamma_points = 10;
  double alpha_max = 0.5;
  double beta_max = 0.5;
  double gamma_max = 0.5;
};

struct DecayPairReport {
  std::int64_t points = 0;       // grid points outside the low-frequency box
  std::int64_t exceedances = 0;  // points with |fhat| above the threshold
  double max_modulus = 0.0;
  CharFnPoint worst;
};

// Outside the low-frequency box {|alpha|, |beta| <= 1e10 log n / n,
// |gamma| <= 6 log^2 n / n^{3/2}}, |fhat| should stay below
// 1 - 10 log n / n for most dice. This is a with-high-probability statement,
// so the box report counts violating pairs instead of asserting none.
struct DecayBoxReport {
  int n = 0;
  double threshold = 0.0;  // 1 - 10 log n / n
  double alpha_box = 0.0;  // box half-width in alpha and beta
  double gamma_box = 0.0;  // box half-width in gamma
  std::int64_t violating_pairs = 0;
  double violating_fraction = 0.0;
  std::vector<DecayPairReport> pairs;
};

DecayPairReport check_decay_pair(const Die& a, const Die& b,
                                 const DecayGridSpec& grid);

// Samples `pair_count` random balanced die pairs on [0, n] and grids each.
DecayBoxReport check_decay_box(int n, int pair_count, const DecayGridSpec& grid,
                               std::uint64_t seed);

// Distance from x to the nearest integer multiple of period; in [0, period/2].
double dist_to_lattice(double x, double period);

// Orthant mass of a centered bivariate Gaussian with correlation rho:
// P(X > 0, Y > 0) = 1/4 + arcsin(rho)/(2 pi).
double gaussian_orthant(double rho);

struct CltCompareOptions {
  // Replace exact conditioning with the window |sum - target| <= window.
  bool windowed = false;
  double window = 0.0;  // <= 0 picks 0.1 standard deviations of the sum
  unsigned workers = 1;
  std::int64_t max_attempts = -1;  // per balanced draw; -1 = default budget
};

struct CltCompareReport {
  int n = 0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double lhs = 0.0;     // MC estimate of P(sum g_A > 0 and sum g_B > 0 | sum)
  double lhs_se = 0.0;
  double rho_cond = 0.0;
  double rhs = 0.0;     // gaussian_orthant(rho_cond)
  double difference = 0.0;
  bool windowed = false;
  bool half_integral_checked = false;
  bool half_integral_ok = true;
  double max_half_integral_err = 0.0;
};

// Compares the conditional two-sided positivity probability, estimated by
// sampling sum-constrained roll vectors with the balanced rejection sampler,
// against the Gaussian orthant value at the conditional correlation. For odd
// n with exact conditioning, every observed sum g lies in Z + 1/2; the report
// records the worst deviation.
CltCompareReport conditional_clt_compare(const Die& a, const Die& b,
                                         std::int64_t trials,
                                         std::uint64_t seed,
                                         const CltCompareOptions& opts = {});

}  // namespace dicelab
