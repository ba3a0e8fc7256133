#include "dicelab/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dicelab/errors.hpp"
#include "dicelab/parallel.hpp"

namespace dicelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_wide_pair(const Die& a, const Die& b, const char* who) {
  if (a.n() != b.n())
    throw DimensionMismatch(std::string(who) + ": face counts differ");
  if (!a.spec().same_interval(b.spec()))
    throw IntervalMismatch(std::string(who) + ": intervals differ");
  const IntervalSpec& sp = a.spec();
  if (sp.z1 != 0.0 || sp.z2 != double(sp.n))
    throw IntervalMismatch(std::string(who) +
                           ": requires the [0, n] interval; rescale first");
}

double sign_draw(RngStream& rng) { return rng.next_double() < 0.5 ? -1.0 : 1.0; }

}  // namespace

std::complex<double> unit_exp(double x) {
  const double t = kTwoPi * x;
  return {std::cos(t), std::sin(t)};
}

std::complex<double> fhat_exact(const Die& a, const Die& b, double alpha,
                                double beta, double gamma) {
  require_wide_pair(a, b, "fhat_exact");
  const int n = a.n();
  const auto& fa = a.sorted_faces();
  const auto& fb = b.sorted_faces();

  std::vector<double> cuts;
  cuts.reserve(fa.size() + fb.size() + 2);
  cuts.push_back(0.0);
  std::merge(fa.begin(), fa.end(), fb.begin(), fb.end(),
             std::back_inserter(cuts));
  cuts.push_back(double(n));

  const double w = gamma - alpha - beta;
  std::complex<double> total{0.0, 0.0};
  std::size_t ia = 0, ib = 0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p], hi = cuts[p + 1];
    while (ia < fa.size() && fa[ia] <= lo) ++ia;
    while (ib < fb.size() && fb[ib] <= lo) ++ib;
    if (!(hi > lo)) continue;
    const double len = hi - lo;
    const double mid = 0.5 * (lo + hi);
    // Piece integral of e(w t) over [lo, hi] = len * sinc(pi w len) * e(w mid);
    // w = 0 is the exact limit sinc(0) = 1.
    const double arg = kPi * w * len;
    const double sinc = (arg == 0.0) ? 1.0 : std::sin(arg) / arg;
    const double phase =
        alpha * double(ia) + beta * double(ib) - 0.5 * gamma * n + w * mid;
    total += (len * sinc) * unit_exp(phase);
  }
  return total / double(n);
}

double q_form(const GMoments& m, double alpha, double beta, double gamma) {
  return 2.0 * kPi * kPi *
         (alpha * alpha * m.var_a + beta * beta * m.var_b +
          gamma * gamma * m.var_h + 2.0 * alpha * beta * m.cv_ab +
          2.0 * alpha * gamma * m.cv_a + 2.0 * beta * gamma * m.cv_b);
}

double ghat(const GMoments& m, int n, double alpha, double beta, double gamma) {
  return std::exp(-double(n) * q_form(m, alpha, beta, gamma));
}

namespace {

double r_bound_value(double sup_a, double sup_b, int n, double alpha,
                     double beta, double gamma) {
  const double cube = double(n) * double(n) * double(n) / 8.0;
  const double aa = std::abs(alpha);
  const double bb = std::abs(beta);
  const double gg = std::abs(gamma);
  return 1200.0 * (aa * aa * aa * sup_a * sup_a * sup_a +
                   bb * bb * bb * sup_b * sup_b * sup_b + gg * gg * gg * cube);
}

}  // namespace

QRDecomp qr_decompose(const Die& a, const Die& b, double alpha, double beta,
                      double gamma) {
  require_wide_pair(a, b, "qr_decompose");
  const GMoments m = moments_quadrature(a, b);
  QRDecomp qr;
  qr.q = q_form(m, alpha, beta, gamma);
  qr.r_actual = fhat_exact(a, b, alpha, beta, gamma) - 1.0 + qr.q;
  qr.r_bound = r_bound_value(m.sup_a, m.sup_b, a.n(), alpha, beta, gamma);
  return qr;
}

ViolationReport check_large_gamma(const Die& a, const Die& b,
                                  std::int64_t samples, RngStream& rng) {
  require_wide_pair(a, b, "check_large_gamma");
  ViolationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    const double w = sign_draw(rng) * rng.uniform(1.01, 8.0);
    const double gamma = w + alpha + beta;
    const double stat =
        std::abs(fhat_exact(a, b, alpha, beta, gamma)) * std::abs(w);
    rep.max_statistic = std::max(rep.max_statistic, stat);
    if (stat > 1.0 + 1e-9) ++rep.violations;
  }
  return rep;
}

ViolationReport check_lipschitz(const Die& a, const Die& b,
                                std::int64_t samples, RngStream& rng) {
  require_wide_pair(a, b, "check_lipschitz");
  const double sup_a = sup_norm_g(a);
  const double sup_b = sup_norm_g(b);
  ViolationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    const double alpha = rng.uniform(-3.0, 3.0);
    const double beta = rng.uniform(-3.0, 3.0);
    const double alpha0 = rng.uniform(-3.0, 3.0);
    const double beta0 = rng.uniform(-3.0, 3.0);
    const double gamma = rng.uniform(-3.0, 3.0);
    const double diff = std::abs(fhat_exact(a, b, alpha, beta, gamma) -
                                 fhat_exact(a, b, alpha0, beta0, gamma));
    const double bound = kTwoPi * (std::abs(alpha - alpha0) * sup_a +
                                   std::abs(beta - beta0) * sup_b);
    const double stat = bound > 1e-15 ? diff / bound : (diff > 1e-12 ? 2.0 : 0.0);
    rep.max_statistic = std::max(rep.max_statistic, stat);
    if (stat > 1.0 + 1e-9) ++rep.violations;
  }
  return rep;
}

ViolationReport check_face_perturbation(const Die& a, const Die& b,
                                        int face_index, double epsilon,
                                        std::int64_t samples, RngStream& rng) {
  require_wide_pair(a, b, "check_face_perturbation");
  if (face_index < 0 || face_index >= a.n())
    throw OutOfRange("check_face_perturbation: face index out of range");
  if (!(epsilon > 0.0))
    throw OutOfRange("check_face_perturbation: epsilon must be positive");
  const int n = a.n();
  ViolationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::vector<double> faces = a.faces();
    const double base = faces[static_cast<std::size_t>(face_index)];
    const double moved = std::clamp(
        base + sign_draw(rng) * rng.uniform(0.5 * epsilon, epsilon), 0.0,
        double(n));
    const double delta = std::abs(moved - base);
    if (delta < 1e-12) continue;  // clamped against the boundary; no movement
    faces[static_cast<std::size_t>(face_index)] = moved;
    const Die perturbed(std::move(faces), a.spec(), false);
    const double alpha = rng.uniform(-5.0, 5.0);
    const double beta = rng.uniform(-5.0, 5.0);
    const double gamma = rng.uniform(-5.0, 5.0);
    const double diff = std::abs(fhat_exact(a, b, alpha, beta, gamma) -
                                 fhat_exact(perturbed, b, alpha, beta, gamma));
    const double stat = diff * double(n) / (2.0 * delta);
    rep.max_statistic = std::max(rep.max_statistic, stat);
    if (stat > 1.0 + 1e-9) ++rep.violations;
  }
  return rep;
}

ViolationReport check_e_to_mod1(std::int64_t samples, RngStream& rng) {
  ViolationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    const double t1 = rng.uniform(-10.0, 10.0);
    const double t2 = rng.uniform(-10.0, 10.0);
    const double lhs = 0.5 * std::abs(unit_exp(t1) + unit_exp(t2));
    const double d = dist_to_lattice(t1 - t2, 1.0);
    const double rhs = 1.0 - d * d;
    const double stat = lhs / rhs;
    rep.max_statistic = std::max(rep.max_statistic, stat);
    if (lhs > rhs + 1e-12) ++rep.violations;
  }
  return rep;
}

ViolationReport check_exp_nq(std::int64_t samples, RngStream& rng) {
  ViolationReport rep;
  rep.samples = samples;
  for (std::int64_t s = 0; s < samples; ++s) {
    const int n = static_cast<int>(
        std::lround(std::exp(rng.uniform(std::log(2.0), std::log(1000.0)))));
    const double q = rng.uniform(0.0, 1.0 / (10.0 * std::sqrt(double(n))));
    const double rmag = rng.uniform(0.0, 1.0 / (100.0 * n));
    const std::complex<double> r = rmag * unit_exp(rng.next_double());
    const std::complex<double> base = std::complex<double>(1.0 - q, 0.0) + r;
    const std::complex<double> powed = std::pow(base, n);
    const double surrogate = std::exp(-double(n) * q);
    const double gap1 = std::abs(1.0 - powed / surrogate);
    const double gap2 = std::abs(1.0 - surrogate / powed);
    const double bound = 40.0 * n * (q * q + rmag);
    const double worst = std::max(gap1, gap2);
    const double stat =
        bound > 1e-14 ? worst / bound : (worst > 1e-12 ? 2.0 : 0.0);
    rep.max_statistic = std::max(rep.max_statistic, stat);
    if (stat > 1.0 + 1e-9) ++rep.violations;
  }
  return rep;
}

ViolationReport check_qr_bound(std::int64_t die_pairs,
                               std::int64_t freqs_per_pair, int n,
                               std::uint64_t seed) {
  const IntervalSpec sp = IntervalSpec::wide(n);
  RngStream rng(seed, 0);
  ViolationReport rep;
  for (std::int64_t p = 0; p < die_pairs; ++p) {
    const Die a = sample_balanced(sp, rng);
    const Die b = sample_balanced(sp, rng);
    const GMoments m = moments_quadrature(a, b);
    const double cap = 1.0 / double(n);
    for (std::int64_t s = 0; s < freqs_per_pair; ++s) {
      const double alpha = rng.uniform(-cap, cap);
      const double beta = rng.uniform(-cap, cap);
      const double gamma = rng.uniform(-cap, cap);
      const double q = q_form(m, alpha, beta, gamma);
      const std::complex<double> r =
          fhat_exact(a, b, alpha, beta, gamma) - 1.0 + q;
      const double bound =
          r_bound_value(m.sup_a, m.sup_b, n, alpha, beta, gamma);
      const double stat =
          bound > 1e-300 ? std::abs(r) / bound : (std::abs(r) > 0 ? 2.0 : 0.0);
      ++rep.samples;
      rep.max_statistic = std::max(rep.max_statistic, stat);
      if (std::abs(r) > bound + 1e-9) ++rep.violations;
    }
  }
  return rep;
}

namespace {

double grid_value(int index, int count, double radius) {
  if (count <= 1) return 0.0;
  return -radius + 2.0 * radius * double(index) / double(count - 1);
}

}  // namespace

DecayPairReport check_decay_pair(const Die& a, const Die& b,
                                 const DecayGridSpec& grid) {
  require_wide_pair(a, b, "check_decay_pair");
  const int n = a.n();
  const double logn = std::log(double(n));
  const double alpha_box = 1e10 * logn / double(n);
  const double gamma_box = 6.0 * logn * logn / std::pow(double(n), 1.5);
  const double threshold = 1.0 - 10.0 * logn / double(n);

  DecayPairReport rep;
  for (int i = 0; i < grid.alpha_points; ++i) {
    const double alpha = grid_value(i, grid.alpha_points, grid.alpha_max);
    for (int j = 0; j < grid.beta_points; ++j) {
      const double beta = grid_value(j, grid.beta_points, grid.beta_max);
      for (int k = 0; k < grid.gamma_points; ++k) {
        const double gamma = grid_value(k, grid.gamma_points, grid.gamma_max);
        const bool inside = std::abs(alpha) <= alpha_box &&
                            std::abs(beta) <= alpha_box &&
                            std::abs(gamma) <= gamma_box;
        if (inside) continue;
        const std::complex<double> value =
            fhat_exact(a, b, alpha, beta, gamma);
        const double mod = std::abs(value);
        ++rep.points;
        if (mod > rep.max_modulus) {
          rep.max_modulus = mod;
          rep.worst = CharFnPoint{alpha, beta, gamma, value};
        }
        if (mod > threshold) ++rep.exceedances;
      }
    }
  }
  return rep;
}

DecayBoxReport check_decay_box(int n, int pair_count, const DecayGridSpec& grid,
                               std::uint64_t seed) {
  if (n < 2) throw OutOfRange("check_decay_box requires n >= 2");
  if (pair_count < 1) throw OutOfRange("check_decay_box requires >= 1 pair");
  const double logn = std::log(double(n));
  DecayBoxReport rep;
  rep.n = n;
  rep.threshold = 1.0 - 10.0 * logn / double(n);
  rep.alpha_box = 1e10 * logn / double(n);
  rep.gamma_box = 6.0 * logn * logn / std::pow(double(n), 1.5);

  const IntervalSpec sp = IntervalSpec::wide(n);
  RngStream rng(seed, 0);
  for (int p = 0; p < pair_count; ++p) {
    const Die a = sample_balanced(sp, rng);
    const Die b = sample_balanced(sp, rng);
    DecayPairReport pair = check_decay_pair(a, b, grid);
    if (pair.exceedances > 0) ++rep.violating_pairs;
    rep.pairs.push_back(std::move(pair));
  }
  rep.violating_fraction = double(rep.violating_pairs) / double(pair_count);
  return rep;
}

double dist_to_lattice(double x, double period) {
  if (!(period > 0.0)) throw OutOfRange("dist_to_lattice: period must be > 0");
  return std::abs(std::remainder(x, period));
}

double gaussian_orthant(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw OutOfRange("gaussian_orthant: correlation must lie in [-1, 1]");
  if (rho == -1.0) return 0.0;
  if (rho == 0.0) return 0.25;
  if (rho == 1.0) return 0.5;
  return 0.25 + std::asin(rho) / kTwoPi;
}

namespace {

// n iid uniforms accepted when the face-sum lands within `window` of the
// balance target; the loose analogue of the exact balanced sampler.
Die sample_windowed(const IntervalSpec& sp, RngStream& rng, double window) {
  const double target = sp.balance_target();
  std::vector<double> faces(static_cast<std::size_t>(sp.n));
  for (std::int64_t attempt = 0; attempt < 1000000; ++attempt) {
    double sum = 0.0, comp = 0.0;
    for (auto& f : faces) {
      f = rng.uniform(sp.z1, sp.z2);
      const double t = sum + f;
      if (std::abs(sum) >= std::abs(f))
        comp += (sum - t) + f;
      else
        comp += (f - t) + sum;
      sum = t;
    }
    if (std::abs((sum + comp) - target) <= window)
      return Die(faces, sp, false);
  }
  throw AttemptsExhausted("windowed roll sampler exhausted its attempts");
}

struct CltState {
  std::int64_t hits = 0;
  double max_err = 0.0;
  void merge(const CltState& o) {
    hits += o.hits;
    max_err = std::max(max_err, o.max_err);
  }
};

}  // namespace

CltCompareReport conditional_clt_compare(const Die& a, const Die& b,
                                         std::int64_t trials,
                                         std::uint64_t seed,
                                         const CltCompareOptions& opts) {
  if (a.n() != b.n())
    throw DimensionMismatch("conditional_clt_compare: face counts differ");
  if (!a.spec().same_interval(b.spec()))
    throw IntervalMismatch("conditional_clt_compare: intervals differ");
  if (!a.is_balanced() || !b.is_balanced())
    throw NotBalanced("conditional_clt_compare requires balanced dice");
  if (trials < 1) throw OutOfRange("conditional_clt_compare: trials >= 1");

  const IntervalSpec sp = a.spec();
  const int n = sp.n;
  const GMoments m =
      sp.is_symmetric() ? moments_closed_form(a, b) : moments_quadrature(a, b);
  const double tol = 1e-10 * std::max({m.var_a, m.var_b, 1.0});
  if (m.var_a_cond <= tol || m.var_b_cond <= tol)
    throw DegenerateMoments(
        "conditional variance vanishes; orthant comparison undefined");

  const double rho = std::clamp(m.rho_cond, -1.0, 1.0);
  const double window = opts.window > 0.0
                            ? opts.window
                            : 0.1 * sp.length() * std::sqrt(double(n) / 12.0);
  const bool check_half = !opts.windowed && (n % 2 == 1);

  auto trial = [&](CltState& st, RngStream& rng, std::int64_t) {
    const Die v = opts.windowed
                      ? sample_windowed(sp, rng, window)
                      : sample_balanced(sp, rng, opts.max_attempts);
    const double sa = sum_g(a, v);
    const double sb = sum_g(b, v);
    if (sa > 0.0 && sb > 0.0) ++st.hits;
    if (check_half) {
      st.max_err = std::max(st.max_err, dist_to_lattice(sa - 0.5, 1.0));
      st.max_err = std::max(st.max_err, dist_to_lattice(sb - 0.5, 1.0));
    }
  };
  const CltState st =
      run_parallel<CltState>(trials, opts.workers, seed, trial);

  CltCompareReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.hits = st.hits;
  rep.lhs = double(st.hits) / double(trials);
  rep.lhs_se = std::sqrt(std::max(0.0, rep.lhs * (1.0 - rep.lhs)) /
                         double(trials));
  rep.rho_cond = rho;
  rep.rhs = gaussian_orthant(rho);
  rep.difference = rep.lhs - rep.rhs;
  rep.windowed = opts.windowed;
  rep.half_integral_checked = check_half;
  rep.max_half_integral_err = st.max_err;
  rep.half_integral_ok = !check_half || st.max_err <= 1e-6;
  return rep;
}

}  // namespace dicelab
