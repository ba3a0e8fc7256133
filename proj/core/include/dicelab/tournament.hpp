#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "dicelab/accumulator.hpp"
#include "dicelab/die.hpp"

namespace dicelab {

enum class Tournament3Class { Transitive, Cycle, Degenerate };
enum class Tournament4Class {
  Transitive,
  WinnerOrLoserPlusCycle,
  FourCycle,
  Degenerate
};

std::string to_string(Tournament3Class c);
std::string to_string(Tournament4Class c);

// Classification by sorted out-degree sequence, which is exact for
// tournaments on <= 4 vertices: (2,1,0) transitive / (1,1,1) cycle, and
// (0,1,2,3) transitive / (1,1,1,3) or (0,2,2,2) winner-or-loser-plus-cycle /
// (1,1,2,2) four-cycle. Any zero margin is Degenerate.
Tournament3Class classify3(std::int64_t m_ab, std::int64_t m_bc,
                           std::int64_t m_ac);
// Margins in pair order (ab, ac, ad, bc, bd, cd).
Tournament4Class classify4(const std::array<std::int64_t, 6>& margins);

// Empirical class distribution of the beats tournament over independently
// sampled balanced dice. Degenerate trials are counted separately and
// excluded from the class probabilities.
struct TournamentEstimate {
  int n = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t degenerate = 0;
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, double> probabilities;
  std::map<std::string, double> std_errors;

  double prob(const std::string& cls) const { return probabilities.at(cls); }
  double se(const std::string& cls) const { return std_errors.at(cls); }
};

TournamentEstimate estimate_tournament3(const IntervalSpec& spec,
                                        std::int64_t trials, std::uint64_t seed,
                                        unsigned workers = 1);
TournamentEstimate estimate_tournament4(const IntervalSpec& spec,
                                        std::int64_t trials, std::uint64_t seed,
                                        unsigned workers = 1);

// Nested two-level estimate of a conditional win probability: outer trials
// fix the conditioned dice, inner trials estimate the probability by fresh
// opponents. X = Pr[A beats B | A]; Y = Pr[A beats both B and C | B, C].
//
// The observed per-trial proportion p_hat is Binomial(inner, p)/inner, so its
// variance across outer trials overshoots Var p by E[p(1-p)]/inner. Since
// E[p_hat(1-p_hat)] = E[p(1-p)]*(inner-1)/inner, subtracting
// mean(p_hat(1-p_hat))/(inner-1) removes that bias exactly; the same
// correction de-biases the second moment.
struct NestedSummary {
  std::int64_t outer = 0;
  std::int64_t inner = 0;
  std::int64_t draws = 0;  // inner comparisons that ended in a draw
  double mean = 0.0;
  double se_mean = 0.0;
  double var_raw = 0.0;        // sample variance of the p_hat values
  double var_corrected = 0.0;  // unbiased estimate of Var p
  double second_moment_corrected = 0.0;  // unbiased estimate of E[p^2]
  double se_second_moment = 0.0;
};

NestedSummary estimate_nested_x(const IntervalSpec& spec, std::int64_t outer,
                                std::int64_t inner, std::uint64_t seed,
                                unsigned workers = 1);
NestedSummary estimate_nested_y(const IntervalSpec& spec, std::int64_t outer,
                                std::int64_t inner, std::uint64_t seed,
                                unsigned workers = 1);

// Residuals of the two linear identities connecting the 3- and 4-dice class
// probabilities: P3line = P4line + P_box/2 + 3*P_1cycle/4 and
// P_triangle = P_box/2 + P_1cycle/4, with SEs propagated through the
// multinomial covariance of each estimate.
struct IdentityReport {
  double residual_line = 0.0;
  double se_line = 0.0;
  double residual_triangle = 0.0;
  double se_triangle = 0.0;
  bool line_ok = false;      // |residual| <= 4 combined SE
  bool triangle_ok = false;
};

IdentityReport identity_report(const TournamentEstimate& t3,
                               const TournamentEstimate& t4);

}  // namespace dicelab
