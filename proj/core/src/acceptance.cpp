#include "dicelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "dicelab/accumulator.hpp"
#include "dicelab/charfn.hpp"
#include "dicelab/die.hpp"
#include "dicelab/edgeworth.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/gstats.hpp"
#include "dicelab/parallel.hpp"
#include "dicelab/tournament.hpp"

namespace dicelab {

namespace {

// Fixed worker count for every statistical criterion: results are then a pure
// function of the pinned seeds, identical on any machine. Oversubscription on
// small machines is harmless for correctness.
constexpr unsigned kWorkers = 8;
constexpr double kZ95 = 1.959963984540054;

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
  char buf[768];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return std::string(buf);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

using Verdict = std::pair<bool, std::string>;

// --- 1: the classic 6-face cycle, exact margins, submillisecond. ------------

Verdict c1_efron_cycle() {
  const IntervalSpec sp(0.0, 6.0, 6);
  const Die a({0, 0, 4, 4, 4, 4}, sp, false);
  const Die b({3, 3, 3, 3, 3, 3}, sp, false);
  const Die c({2, 2, 2, 2, 6, 6}, sp, false);
  const Die d({1, 1, 1, 5, 5, 5}, sp, false);

  const double t0 = now_seconds();
  const BeatsOutcome ab = beats_fast(a, b);
  const BeatsOutcome bc = beats_fast(b, c);
  const BeatsOutcome cd = beats_fast(c, d);
  const BeatsOutcome da = beats_fast(d, a);
  const double ms = (now_seconds() - t0) * 1e3;

  const bool cycle = ab.margin == 12 && bc.margin == 12 && cd.margin == 12 &&
                     da.margin == 12 && ab.result == BeatsResult::FirstWins &&
                     bc.result == BeatsResult::FirstWins &&
                     cd.result == BeatsResult::FirstWins &&
                     da.result == BeatsResult::FirstWins;
  const bool oracle = beats_naive(a, b).margin == ab.margin &&
                      beats_naive(b, c).margin == bc.margin &&
                      beats_naive(c, d).margin == cd.margin &&
                      beats_naive(d, a).margin == da.margin;
  const bool fast = ms < 1.0;
  return {cycle && oracle && fast,
          strf("margins ab=%lld bc=%lld cd=%lld da=%lld elapsed=%.4f ms",
               static_cast<long long>(ab.margin),
               static_cast<long long>(bc.margin),
               static_cast<long long>(cd.margin),
               static_cast<long long>(da.margin), ms)};
}

// --- 2: cycle rate of three balanced dice near 1/4. -------------------------

Verdict c2_three_dice() {
  const auto est =
      estimate_tournament3(IntervalSpec::symmetric(201), 200000, 20201,
                           kWorkers);
  const double p = est.prob("cycle");
  const double se = est.se("cycle");
  const double band = 4.0 * se + 0.02;
  const bool pass = std::abs(p - 0.25) <= band;
  return {pass, strf("P_cycle=%.5f se=%.5f band=%.5f degenerate=%lld", p, se,
                     band, static_cast<long long>(est.degenerate))};
}

// --- 3: transitive share of four dice exceeds 3/8. --------------------------

Verdict c3_four_line() {
  const auto est =
      estimate_tournament4(IntervalSpec::symmetric(101), 100000, 30101,
                           kWorkers);
  const double pl = est.prob("transitive");
  const double sl = est.se("transitive");
  const double pb = est.prob("four_cycle");
  const double eff = double(est.trials - est.degenerate);
  const double se_diff = std::sqrt(
      (pl * (1.0 - pl) + pb * (1.0 - pb) + 2.0 * pl * pb) / eff);
  const bool excess = (pl - 0.375) >= 3.0 * sl;
  const bool window = pl >= 0.37 && pl <= 0.41;
  const bool near_box = std::abs(pl - pb) <= 4.0 * se_diff + 0.02;
  return {excess && window && near_box,
          strf("P_line=%.5f se=%.5f P_fourcycle=%.5f |diff|=%.5f band=%.5f",
               pl, sl, pb, std::abs(pl - pb), 4.0 * se_diff + 0.02)};
}

// --- 4: nested second-moment estimates match the direct class rates. --------

Verdict c4_nested_reduction() {
  const IntervalSpec sp = IntervalSpec::symmetric(101);
  const auto ny = estimate_nested_y(sp, 2000, 500, 40111, kWorkers);
  const auto nx = estimate_nested_x(sp, 2000, 500, 40222, kWorkers);
  const auto t4 = estimate_tournament4(sp, 100000, 40333, kWorkers);
  const auto t3 = estimate_tournament3(sp, 100000, 40444, kWorkers);

  const double l4 = 6.0 * ny.second_moment_corrected;
  const double s4 = 6.0 * ny.se_second_moment;
  const double p4 = t4.prob("transitive");
  const double sp4 = t4.se("transitive");
  const double l3 = 3.0 * nx.second_moment_corrected;
  const double s3 = 3.0 * nx.se_second_moment;
  const double p3 = t3.prob("transitive");
  const double sp3 = t3.se("transitive");

  const bool ok4 = std::abs(l4 - p4) <= kZ95 * (s4 + sp4);
  const bool ok3 = std::abs(l3 - p3) <= kZ95 * (s3 + sp3);
  return {ok4 && ok3,
          strf("6E[Y^2]=%.5f vs P_line=%.5f (tol %.5f); "
               "3E[X^2]=%.5f vs P_transitive3=%.5f (tol %.5f)",
               l4, p4, kZ95 * (s4 + sp4), l3, p3, kZ95 * (s3 + sp3))};
}

// --- 5: moment growth rates of balanced dice. -------------------------------

struct MomentState {
  Accumulator var_a;
  Accumulator cv_a2;
  Accumulator var_a2;
  void merge(const MomentState& o) {
    var_a.merge(o.var_a);
    cv_a2.merge(o.cv_a2);
    var_a2.merge(o.var_a2);
  }
};

MomentState sample_single_moments(int n, std::int64_t dice,
                                  std::uint64_t seed) {
  const IntervalSpec sp = IntervalSpec::symmetric(n);
  return run_parallel<MomentState>(
      dice, kWorkers, seed,
      [sp](MomentState& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(sp, rng);
        const GMoments m = moments_closed_form(a, a);
        st.var_a.push(m.var_a);
        st.cv_a2.push(m.cv_a * m.cv_a);
        st.var_a2.push(m.var_a * m.var_a);
      });
}

Verdict c5_moment_asymptotics() {
  const MomentState s1000 = sample_single_moments(1000, 10000, 50111);
  const double var_target = 1000.0 / 15.0;
  const double cv_target = 1000.0 / 60.0;
  const bool ok_var =
      std::abs(s1000.var_a.mean - var_target) <= 0.05 * var_target;
  const bool ok_cv =
      std::abs(s1000.cv_a2.mean - cv_target) <= 0.05 * cv_target;

  struct PairState {
    Accumulator cv_ab2;
    void merge(const PairState& o) { cv_ab2.merge(o.cv_ab2); }
  };
  const IntervalSpec sp500 = IntervalSpec::symmetric(500);
  const PairState pairs = run_parallel<PairState>(
      10000, kWorkers, 50222,
      [sp500](PairState& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(sp500, rng);
        const Die b = sample_balanced(sp500, rng);
        const GMoments m = moments_closed_form(a, b);
        st.cv_ab2.push(m.cv_ab * m.cv_ab);
      });
  const double cvab_target = 11.0 * 500.0 * 500.0 / 12600.0;
  const bool ok_cvab =
      std::abs(pairs.cv_ab2.mean - cvab_target) <= 0.10 * cvab_target;

  const MomentState s250 = sample_single_moments(250, 4000, 50333);
  const MomentState s500 = sample_single_moments(500, 4000, 50444);
  const double r250 = s250.var_a2.mean / (250.0 * 250.0);
  const double r500 = s500.var_a2.mean / (500.0 * 500.0);
  const double r1000 = s1000.var_a2.mean / (1000.0 * 1000.0);
  const double rmax = std::max({r250, r500, r1000});
  const double rmin = std::min({r250, r500, r1000});
  const bool ok_ratio = rmax < 2.0 * rmin;

  return {ok_var && ok_cv && ok_cvab && ok_ratio,
          strf("Var_A=%.3f (n/15=%.3f) CV_A^2=%.3f (n/60=%.3f) "
               "CV_AB^2=%.2f (11n^2/12600=%.2f) Var_A^2/n^2={%.5f,%.5f,%.5f}",
               s1000.var_a.mean, var_target, s1000.cv_a2.mean, cv_target,
               pairs.cv_ab2.mean, cvab_target, r250, r500, r1000)};
}

// --- 6: exact values of the split-domain quadrature table. ------------------

Verdict c6_simple_integrals() {
  const auto rows = simple_integrals_table();
  bool all = rows.size() == 17;
  double worst = 0.0;
  for (const auto& r : rows) {
    all = all && r.pass;
    worst = std::max(worst, r.abs_err);
  }
  return {all, strf("rows=%d worst_abs_err=%.2e", int(rows.size()), worst)};
}

// --- 7: conditional expectations, closed targets and MC cross-check. --------

Verdict c7_conditional_expectations() {
  const int n = 50;
  const double dn = double(n);
  const double a2 = conditional_expect(
      [](const double* x) { return x[0] * x[0]; }, {1}, n);
  const double a2_target = 1.0 - 2.0 / (5.0 * dn) - 18.0 / (175.0 * dn * dn);
  const double mab = conditional_expect(
      [](const double* x) { return std::max(x[0], x[1]); }, {1, 1}, n);
  const double mab_target =
      kSqrt3 / 3.0 * (1.0 - 1.0 / (5.0 * dn) - 2.0 / (25.0 * dn * dn));
  const bool ok_a2 = std::abs(a2 - a2_target) <= 1e-4;
  const bool ok_mab = std::abs(mab - mab_target) <= 1e-4;

  struct McState {
    Accumulator sq;
    Accumulator mx;
    void merge(const McState& o) {
      sq.merge(o.sq);
      mx.merge(o.mx);
    }
  };
  const IntervalSpec sp = IntervalSpec::symmetric(n);
  const McState mc = run_parallel<McState>(
      200000, kWorkers, 70050,
      [sp](McState& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(sp, rng);
        double sq = 0.0;
        for (double f : a.faces()) sq += f * f;
        st.sq.push(sq / double(sp.n));
        const Die c = sample_balanced(sp, rng);
        const Die d = sample_balanced(sp, rng);
        double mx = 0.0;
        for (int i = 0; i < sp.n; ++i)
          mx += std::max(c.faces()[size_t(i)], d.faces()[size_t(i)]);
        st.mx.push(mx / double(sp.n));
      });
  const bool ok_mc_a2 = std::abs(mc.sq.mean - a2) <= 3.0 * mc.sq.se_mean();
  const bool ok_mc_mab = std::abs(mc.mx.mean - mab) <= 3.0 * mc.mx.se_mean();

  return {ok_a2 && ok_mab && ok_mc_a2 && ok_mc_mab,
          strf("E[a1^2]=%.8f target=%.8f; E[max]=%.8f target=%.8f; "
               "MC %.6f+-%.6f / %.6f+-%.6f",
               a2, a2_target, mab, mab_target, mc.sq.mean, mc.sq.se_mean(),
               mc.mx.mean, mc.mx.se_mean())};
}

// --- 8: density expansion accuracy against the exact sum density. -----------

Verdict c8_density_convergence() {
  auto sup_err = [](int n, int order) {
    const IrwinHall exact(n);
    const double rn = std::sqrt(double(n));
    double worst = 0.0;
    for (int i = 0; i <= 600; ++i) {
      const double x = -3.0 + 6.0 * double(i) / 600.0;
      const double approx = edgeworth_density(n, x, order);
      const double truth = rn * exact(x * rn);
      worst = std::max(worst, std::abs(approx - truth));
    }
    return worst;
  };
  const double e0 = sup_err(16, 0);
  const double e2 = sup_err(16, 2);
  const double e4 = sup_err(16, 4);
  const bool ok_order = 10.0 * e2 <= e0;

  auto discrepancy = [](int n, int k) {
    const DirectCorrectionFactor direct(n, k, DensityBackend::Exact);
    const double r = double(k) * kSqrt3;
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = -r + 2.0 * r * double(i) / 200.0;
      worst = std::max(
          worst, std::abs(correction_factor_closed(n, k, x) - direct(x)));
    }
    return worst;
  };
  const double d15_1 = discrepancy(15, 1);
  const double d30_1 = discrepancy(30, 1);
  const double d15_2 = discrepancy(15, 2);
  const double d30_2 = discrepancy(30, 2);
  const bool ok_k1 = d15_1 >= 4.0 * d30_1;
  const bool ok_k2 = d15_2 >= 4.0 * d30_2;

  return {ok_order && ok_k1 && ok_k2,
          strf("sup-err n=16: order0=%.2e order2=%.2e order4=%.2e; "
               "closed-vs-direct k=1: %.2e->%.2e, k=2: %.2e->%.2e",
               e0, e2, e4, d15_1, d30_1, d15_2, d30_2)};
}

// --- 9: characteristic-function inequalities, zero tolerance. ---------------

Verdict c9_charfn_bounds() {
  const int n = 50;
  const IntervalSpec sp = IntervalSpec::wide(n);
  RngStream rng(90050, 0);

  std::int64_t v_gamma = 0, v_lip = 0, v_face = 0;
  double s_gamma = 0.0, s_lip = 0.0, s_face = 0.0;
  for (int p = 0; p < 20; ++p) {
    const Die a = sample_balanced(sp, rng);
    const Die b = sample_balanced(sp, rng);
    const auto rg = check_large_gamma(a, b, 1000, rng);
    v_gamma += rg.violations;
    s_gamma = std::max(s_gamma, rg.max_statistic);
    if (p < 5) {
      const auto rl = check_lipschitz(a, b, 200, rng);
      v_lip += rl.violations;
      s_lip = std::max(s_lip, rl.max_statistic);
      const auto rf = check_face_perturbation(a, b, n / 2, 0.05, 100, rng);
      v_face += rf.violations;
      s_face = std::max(s_face, rf.max_statistic);
    }
  }
  const auto rq = check_qr_bound(20, 50, n, 90051);
  const auto re = check_exp_nq(10000, rng);

  const bool pass = v_gamma == 0 && v_lip == 0 && v_face == 0 &&
                    rq.violations == 0 && re.violations == 0;
  return {pass,
          strf("max ratios: large-gamma=%.4f lipschitz=%.4f face=%.4f "
               "qr=%.4f exp-nq=%.4f (all must stay <= 1)",
               s_gamma, s_lip, s_face, rq.max_statistic, re.max_statistic)};
}

// --- 10: sup-norm bound and half-integer g sums. ----------------------------

Verdict c10_supnorm_half_integrality() {
  const int n = 1000;
  const double bound = 5.0 * std::sqrt(double(n) * std::log(double(n)));
  const IntervalSpec sp = IntervalSpec::symmetric(n);
  struct SupState {
    std::int64_t exceed = 0;
    double worst = 0.0;
    void merge(const SupState& o) {
      exceed += o.exceed;
      worst = std::max(worst, o.worst);
    }
  };
  const SupState sup = run_parallel<SupState>(
      10000, kWorkers, 100100,
      [sp, bound](SupState& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(sp, rng);
        const double v = sup_norm_g(a);
        if (v > bound) ++st.exceed;
        st.worst = std::max(st.worst, v);
      });

  struct HalfState {
    double max_err = 0.0;
    void merge(const HalfState& o) { max_err = std::max(max_err, o.max_err); }
  };
  const IntervalSpec spo = IntervalSpec::symmetric(101);
  const HalfState half = run_parallel<HalfState>(
      2000, kWorkers, 100200,
      [spo](HalfState& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(spo, rng);
        const Die b = sample_balanced(spo, rng);
        st.max_err = std::max(
            st.max_err, dist_to_lattice(sum_g(a, b) - 0.5, 1.0));
      });

  const bool pass = sup.exceed == 0 && half.max_err <= 1e-6;
  return {pass, strf("sup exceedances=%lld worst=%.2f bound=%.2f; "
                     "half-integer max err=%.2e",
                     static_cast<long long>(sup.exceed), sup.worst, bound,
                     half.max_err)};
}

// --- 11: orthant probabilities. ---------------------------------------------

Verdict c11_orthant() {
  const bool exact = gaussian_orthant(0.0) == 0.25 &&
                     gaussian_orthant(1.0) == 0.5 &&
                     gaussian_orthant(-1.0) == 0.0;
  bool monotone = true;
  double prev = gaussian_orthant(-1.0);
  for (int i = 1; i <= 100; ++i) {
    const double v = gaussian_orthant(-1.0 + 2.0 * double(i) / 100.0);
    monotone = monotone && v > prev;
    prev = v;
  }
  RngStream rng(110100, 0);
  bool mc_ok = true;
  double worst_dev = 0.0;
  for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const std::int64_t m = 1000000;
    const double c = std::sqrt(1.0 - rho * rho);
    std::int64_t hit = 0;
    for (std::int64_t i = 0; i < m; ++i) {
      const double z1 = rng.next_normal();
      const double z2 = rho * z1 + c * rng.next_normal();
      if (z1 > 0.0 && z2 > 0.0) ++hit;
    }
    const double g = gaussian_orthant(rho);
    const double se = std::sqrt(g * (1.0 - g) / double(m));
    const double dev = std::abs(double(hit) / double(m) - g);
    worst_dev = std::max(worst_dev, dev / se);
    mc_ok = mc_ok && dev <= 4.0 * se;
  }
  return {exact && monotone && mc_ok,
          strf("exact=%d monotone=%d worst MC deviation=%.2f se", int(exact),
               int(monotone), worst_dev)};
}

// --- 12: conditional positivity vs Gaussian orthant at n=400. ---------------

Verdict c12_conditional_clt() {
  const int n = 400;
  const IntervalSpec sp = IntervalSpec::symmetric(n);
  RngStream prng(120400, 0);
  auto draw_pair = [&]() {
    for (int tries = 0; tries < 1000; ++tries) {
      Die a = sample_balanced(sp, prng);
      Die b = sample_balanced(sp, prng);
      const GMoments m = moments_closed_form(a, b);
      if (m.var_a_cond >= 0.01 * n && m.var_b_cond >= 0.01 * n)
        return std::make_pair(std::move(a), std::move(b));
    }
    throw AttemptsExhausted("no well-conditioned balanced pair found");
  };

  int ok_pairs = 0;
  double worst = 0.0;
  for (int p = 0; p < 10; ++p) {
    const auto [a, b] = draw_pair();
    CltCompareOptions opts;
    opts.workers = kWorkers;
    const CltCompareReport rep =
        conditional_clt_compare(a, b, 100000, 120500 + std::uint64_t(p), opts);
    worst = std::max(worst, std::abs(rep.difference));
    if (std::abs(rep.difference) <= 0.05) ++ok_pairs;
  }
  return {ok_pairs >= 9,
          strf("pairs within 0.05: %d/10, worst |difference|=%.4f", ok_pairs,
               worst)};
}

// --- 13: engineering checks: agreement, determinism, speedup. ---------------

Verdict c13_engineering() {
  RngStream rng(130100, 0);
  bool agree = true;
  for (int t = 0; t < 1000 && agree; ++t) {
    const int n = 2 + int(rng.next_u64() % 39);
    const IntervalSpec spn(-1.0, 11.0, n);
    const bool ints = (t % 2) == 0;
    auto draw = [&]() {
      std::vector<double> f(static_cast<std::size_t>(n));
      for (auto& x : f)
        x = ints ? double(rng.next_u64() % 9) : rng.uniform(0.0, 10.0);
      return Die(std::move(f), spn, false);
    };
    const Die a = draw();
    const Die b = draw();
    const BeatsOutcome ff = beats_fast(a, b);
    const BeatsOutcome nn = beats_naive(a, b);
    agree = ff.margin == nn.margin && ff.result == nn.result;
  }

  double worst_rel = 0.0;
  const IntervalSpec spm = IntervalSpec::symmetric(150);
  for (int t = 0; t < 50; ++t) {
    const Die a = sample_balanced(spm, rng);
    const Die b = sample_balanced(spm, rng);
    const GMoments mc = moments_closed_form(a, b);
    const GMoments mq = moments_quadrature(a, b);
    auto rel = [](double x, double y) {
      return std::abs(x - y) / std::max(1.0, std::abs(y));
    };
    worst_rel = std::max({worst_rel, rel(mc.var_a, mq.var_a),
                          rel(mc.var_b, mq.var_b), rel(mc.cv_ab, mq.cv_ab),
                          rel(mc.cv_a, mq.cv_a), rel(mc.cv_b, mq.cv_b)});
  }
  const bool close = worst_rel <= 1e-6;

  auto serialize = [](const TournamentEstimate& e) {
    std::string s;
    for (const auto& [k, v] : e.counts)
      s += strf("%s=%lld;", k.c_str(), static_cast<long long>(v));
    for (const auto& [k, v] : e.probabilities)
      s += strf("%s=%.17g;", k.c_str(), v);
    for (const auto& [k, v] : e.std_errors)
      s += strf("%s=%.17g;", k.c_str(), v);
    s += strf("deg=%lld", static_cast<long long>(e.degenerate));
    return s;
  };
  const auto r1 =
      estimate_tournament3(IntervalSpec::symmetric(31), 20000, 999, kWorkers);
  const auto r2 =
      estimate_tournament3(IntervalSpec::symmetric(31), 20000, 999, kWorkers);
  const bool deterministic = serialize(r1) == serialize(r2);

  auto timed = [](unsigned workers) {
    const double t0 = now_seconds();
    estimate_tournament4(IntervalSpec::symmetric(101), 30000, 424242, workers);
    return now_seconds() - t0;
  };
  const double t1 = timed(1);
  const double t8 = timed(kWorkers);
  const double speedup = t1 / t8;
  const bool fast = speedup >= 4.0;

  return {agree && close && deterministic && fast,
          strf("fast==naive: %d; moments rel err=%.2e; deterministic: %d; "
               "speedup 1->8 workers: %.2fx (need >= 4x)",
               int(agree), worst_rel, int(deterministic), speedup)};
}

struct Entry {
  int id;
  const char* name;
  std::function<Verdict()> body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {1, "efron-cycle", c1_efron_cycle},
      {2, "three-dice-cycle-rate", c2_three_dice},
      {3, "four-line-excess", c3_four_line},
      {4, "nested-reduction", c4_nested_reduction},
      {5, "moment-asymptotics", c5_moment_asymptotics},
      {6, "split-quadrature-integrals", c6_simple_integrals},
      {7, "conditional-expectations", c7_conditional_expectations},
      {8, "density-convergence", c8_density_convergence},
      {9, "charfn-bounds", c9_charfn_bounds},
      {10, "supnorm-half-integrality", c10_supnorm_half_integrality},
      {11, "orthant-probabilities", c11_orthant},
      {12, "conditional-clt", c12_conditional_clt},
      {13, "engineering", c13_engineering},
  };
  return entries;
}

CriterionResult run_entry(const Entry& e) {
  CriterionResult r;
  r.id = e.id;
  r.name = e.name;
  const double t0 = now_seconds();
  try {
    auto [pass, detail] = e.body();
    r.pass = pass;
    r.detail = std::move(detail);
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = now_seconds() - t0;
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.reserve(registry().size());
  for (const auto& e : registry()) out.push_back(run_entry(e));
  return out;
}

CriterionResult run_criterion(int id) {
  for (const auto& e : registry())
    if (e.id == id) return run_entry(e);
  throw OutOfRange("unknown acceptance criterion id " + std::to_string(id));
}

}  // namespace dicelab
