#include "dicelab/tournament.hpp"

#include <algorithm>
#include <cmath>

#include "dicelab/errors.hpp"
#include "dicelab/parallel.hpp"

namespace dicelab {

std::string to_string(Tournament3Class c) {
  switch (c) {
    case Tournament3Class::Transitive: return "transitive";
    case Tournament3Class::Cycle: return "cycle";
    case Tournament3Class::Degenerate: return "degenerate";
  }
  return "?";
}

std::string to_string(Tournament4Class c) {
  switch (c) {
    case Tournament4Class::Transitive: return "transitive";
    case Tournament4Class::WinnerOrLoserPlusCycle: return "one_plus_cycle";
    case Tournament4Class::FourCycle: return "four_cycle";
    case Tournament4Class::Degenerate: return "degenerate";
  }
  return "?";
}

Tournament3Class classify3(std::int64_t m_ab, std::int64_t m_bc,
                           std::int64_t m_ac) {
  if (m_ab == 0 || m_bc == 0 || m_ac == 0) return Tournament3Class::Degenerate;
  const int deg_a = (m_ab > 0) + (m_ac > 0);
  const int deg_b = (m_ab < 0) + (m_bc > 0);
  const int deg_c = (m_ac < 0) + (m_bc < 0);
  // Out-degrees of a 3-tournament are either {2,1,0} or {1,1,1}.
  if (deg_a == 1 && deg_b == 1 && deg_c == 1) return Tournament3Class::Cycle;
  return Tournament3Class::Transitive;
}

Tournament4Class classify4(const std::array<std::int64_t, 6>& m) {
  // Margins in order (ab, ac, ad, bc, bd, cd).
  for (std::int64_t v : m)
    if (v == 0) return Tournament4Class::Degenerate;
  std::array<int, 4> deg = {
      int(m[0] > 0) + int(m[1] > 0) + int(m[2] > 0),
      int(m[0] < 0) + int(m[3] > 0) + int(m[4] > 0),
      int(m[1] < 0) + int(m[3] < 0) + int(m[5] > 0),
      int(m[2] < 0) + int(m[4] < 0) + int(m[5] < 0)};
  std::sort(deg.begin(), deg.end());
  if (deg == std::array<int, 4>{0, 1, 2, 3}) return Tournament4Class::Transitive;
  if (deg == std::array<int, 4>{1, 1, 2, 2}) return Tournament4Class::FourCycle;
  // The remaining tournaments are (1,1,1,3) and (0,2,2,2).
  return Tournament4Class::WinnerOrLoserPlusCycle;
}

namespace {

struct CountState3 {
  std::int64_t transitive = 0, cycle = 0, degenerate = 0;
  void merge(const CountState3& o) {
    transitive += o.transitive;
    cycle += o.cycle;
    degenerate += o.degenerate;
  }
};

struct CountState4 {
  std::int64_t transitive = 0, one_plus_cycle = 0, four_cycle = 0,
               degenerate = 0;
  void merge(const CountState4& o) {
    transitive += o.transitive;
    one_plus_cycle += o.one_plus_cycle;
    four_cycle += o.four_cycle;
    degenerate += o.degenerate;
  }
};

void finalize(TournamentEstimate& est) {
  const double effective = double(est.trials - est.degenerate);
  for (const auto& [cls, cnt] : est.counts) {
    const double p = effective > 0.0 ? double(cnt) / effective : 0.0;
    est.probabilities[cls] = p;
    est.std_errors[cls] =
        effective > 0.0 ? std::sqrt(p * (1.0 - p) / effective) : 0.0;
  }
}

}  // namespace

TournamentEstimate estimate_tournament3(const IntervalSpec& spec,
                                        std::int64_t trials, std::uint64_t seed,
                                        unsigned workers) {
  auto merged = run_parallel<CountState3>(
      trials, workers, seed,
      [&spec](CountState3& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(spec, rng);
        const Die b = sample_balanced(spec, rng);
        const Die c = sample_balanced(spec, rng);
        const auto cls = classify3(beats_fast(a, b).margin,
                                   beats_fast(b, c).margin,
                                   beats_fast(a, c).margin);
        switch (cls) {
          case Tournament3Class::Transitive: ++st.transitive; break;
          case Tournament3Class::Cycle: ++st.cycle; break;
          case Tournament3Class::Degenerate: ++st.degenerate; break;
        }
      });
  TournamentEstimate est;
  est.n = spec.n;
  est.seed = seed;
  est.trials = trials;
  est.degenerate = merged.degenerate;
  est.counts["transitive"] = merged.transitive;
  est.counts["cycle"] = merged.cycle;
  finalize(est);
  return est;
}

TournamentEstimate estimate_tournament4(const IntervalSpec& spec,
                                        std::int64_t trials, std::uint64_t seed,
                                        unsigned workers) {
  auto merged = run_parallel<CountState4>(
      trials, workers, seed,
      [&spec](CountState4& st, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(spec, rng);
        const Die b = sample_balanced(spec, rng);
        const Die c = sample_balanced(spec, rng);
        const Die d = sample_balanced(spec, rng);
        const std::array<std::int64_t, 6> margins = {
            beats_fast(a, b).margin, beats_fast(a, c).margin,
            beats_fast(a, d).margin, beats_fast(b, c).margin,
            beats_fast(b, d).margin, beats_fast(c, d).margin};
        switch (classify4(margins)) {
          case Tournament4Class::Transitive: ++st.transitive; break;
          case Tournament4Class::WinnerOrLoserPlusCycle:
            ++st.one_plus_cycle;
            break;
          case Tournament4Class::FourCycle: ++st.four_cycle; break;
          case Tournament4Class::Degenerate: ++st.degenerate; break;
        }
      });
  TournamentEstimate est;
  est.n = spec.n;
  est.seed = seed;
  est.trials = trials;
  est.degenerate = merged.degenerate;
  est.counts["transitive"] = merged.transitive;
  est.counts["one_plus_cycle"] = merged.one_plus_cycle;
  est.counts["four_cycle"] = merged.four_cycle;
  finalize(est);
  return est;
}

namespace {

struct NestedState {
  Accumulator p_hat;          // the per-outer-trial proportions
  Accumulator p_hat_one_m;    // p_hat*(1-p_hat)
  Accumulator second_corr;    // p_hat^2 - p_hat(1-p_hat)/(inner-1)
  std::int64_t draws = 0;
  void merge(const NestedState& o) {
    p_hat.merge(o.p_hat);
    p_hat_one_m.merge(o.p_hat_one_m);
    second_corr.merge(o.second_corr);
    draws += o.draws;
  }
};

NestedSummary summarize(const NestedState& st, std::int64_t outer,
                        std::int64_t inner) {
  NestedSummary s;
  s.outer = outer;
  s.inner = inner;
  s.draws = st.draws;
  s.mean = st.p_hat.mean;
  s.se_mean = st.p_hat.se_mean();
  s.var_raw = st.p_hat.sample_variance();
  s.var_corrected = s.var_raw - st.p_hat_one_m.mean / double(inner - 1);
  s.second_moment_corrected = st.second_corr.mean;
  s.se_second_moment = st.second_corr.se_mean();
  return s;
}

template <typename InnerFn>
NestedSummary nested_run(std::int64_t outer, std::int64_t inner,
                         std::uint64_t seed, unsigned workers, InnerFn&& fn) {
  if (outer < 2 || inner < 2)
    throw OutOfRange("nested estimate: need outer >= 2 and inner >= 2");
  auto merged = run_parallel<NestedState>(
      outer, workers, seed,
      [&](NestedState& st, RngStream& rng, std::int64_t) {
        const auto [wins, draws] = fn(rng);
        const double p = double(wins) / double(inner);
        st.p_hat.push(p);
        st.p_hat_one_m.push(p * (1.0 - p));
        st.second_corr.push(p * p - p * (1.0 - p) / double(inner - 1));
        st.draws += draws;
      });
  return summarize(merged, outer, inner);
}

}  // namespace

NestedSummary estimate_nested_x(const IntervalSpec& spec, std::int64_t outer,
                                std::int64_t inner, std::uint64_t seed,
                                unsigned workers) {
  return nested_run(outer, inner, seed, workers, [&](RngStream& rng) {
    const Die a = sample_balanced(spec, rng);
    std::int64_t wins = 0, draws = 0;
    for (std::int64_t i = 0; i < inner; ++i) {
      const Die b = sample_balanced(spec, rng);
      const auto out = beats_fast(a, b);
      wins += out.result == BeatsResult::FirstWins;
      draws += out.result == BeatsResult::Draw;
    }
    return std::pair<std::int64_t, std::int64_t>(wins, draws);
  });
}

NestedSummary estimate_nested_y(const IntervalSpec& spec, std::int64_t outer,
                                std::int64_t inner, std::uint64_t seed,
                                unsigned workers) {
  return nested_run(outer, inner, seed, workers, [&](RngStream& rng) {
    const Die b = sample_balanced(spec, rng);
    const Die c = sample_balanced(spec, rng);
    std::int64_t wins = 0, draws = 0;
    for (std::int64_t i = 0; i < inner; ++i) {
      const Die a = sample_balanced(spec, rng);
      const auto ab = beats_fast(a, b);
      const auto ac = beats_fast(a, c);
      wins += ab.result == BeatsResult::FirstWins &&
              ac.result == BeatsResult::FirstWins;
      draws += ab.result == BeatsResult::Draw || ac.result == BeatsResult::Draw;
    }
    return std::pair<std::int64_t, std::int64_t>(wins, draws);
  });
}

namespace {

// Variance of a linear combination of multinomial class proportions:
// Var(sum c_i p_i) with Cov(p_i, p_j) = -p_i p_j / T off-diagonal.
double multinomial_combo_var(const std::vector<double>& coef,
                             const std::vector<double>& prob, double trials) {
  double v = 0.0;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    v += coef[i] * coef[i] * prob[i] * (1.0 - prob[i]);
    for (std::size_t j = i + 1; j < coef.size(); ++j)
      v -= 2.0 * coef[i] * coef[j] * prob[i] * prob[j];
  }
  return v / trials;
}

}  // namespace

IdentityReport identity_report(const TournamentEstimate& t3,
                               const TournamentEstimate& t4) {
  if (t3.n != t4.n)
    throw DimensionMismatch("identity_report: estimates at different n");
  const double p3line = t3.prob("transitive");
  const double ptri = t3.prob("cycle");
  const double p4line = t4.prob("transitive");
  const double pone = t4.prob("one_plus_cycle");
  const double pbox = t4.prob("four_cycle");
  const double eff3 = double(t3.trials - t3.degenerate);
  const double eff4 = double(t4.trials - t4.degenerate);

  IdentityReport rep;
  rep.residual_line = p3line - (p4line + 0.5 * pbox + 0.75 * pone);
  rep.residual_triangle = ptri - (0.5 * pbox + 0.25 * pone);
  const double var3_line = p3line * (1.0 - p3line) / eff3;
  const double var3_tri = ptri * (1.0 - ptri) / eff3;
  const double var4_line =
      multinomial_combo_var({1.0, 0.75, 0.5}, {p4line, pone, pbox}, eff4);
  const double var4_tri =
      multinomial_combo_var({0.0, 0.25, 0.5}, {p4line, pone, pbox}, eff4);
  rep.se_line = std::sqrt(var3_line + var4_line);
  rep.se_triangle = std::sqrt(var3_tri + var4_tri);
  rep.line_ok = std::abs(rep.residual_line) <= 4.0 * rep.se_line;
  rep.triangle_ok = std::abs(rep.residual_triangle) <= 4.0 * rep.se_triangle;
  return rep;
}

}  // namespace dicelab
