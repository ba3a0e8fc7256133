#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "dicelab/errors.hpp"

namespace dicelab {

// Streaming moment state: count, mean and centered power sums m2/m3/m4, plus
// min/max. Mergeable (parallel-friendly) with the pairwise update formulas,
// so a tree of combines agrees with single-pass accumulation up to rounding.
// m3/m4 are carried everywhere because several experiments need fourth-moment
// estimates, not just variances.
struct Accumulator {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void push(double x) {
    const std::int64_t n1 = count;
    count += 1;
    const double delta = x - mean;
    const double delta_n = delta / double(count);
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * double(n1);
    mean += delta_n;
    m4 += term1 * delta_n2 * double(count * count - 3 * count + 3) +
          6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
    m3 += term1 * delta_n * double(count - 2) - 3.0 * delta_n * m2;
    m2 += term1;
    min = std::min(min, x);
    max = std::max(max, x);
  }

  // Pairwise merge; the identity element is the default-constructed state.
  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = double(count), nb = double(o.count);
    const double n = na + nb;
    const double delta = o.mean - mean;
    const double d_n = delta / n;
    const double m2n = m2 + o.m2 + delta * d_n * na * nb;
    const double m3n = m3 + o.m3 + delta * d_n * d_n * na * nb * (na - nb) +
                       3.0 * d_n * (na * o.m2 - nb * m2);
    const double m4n = m4 + o.m4 +
                       delta * d_n * d_n * d_n * na * nb * (na * na - na * nb + nb * nb) +
                       6.0 * d_n * d_n * (na * na * o.m2 + nb * nb * m2) +
                       4.0 * d_n * (na * o.m3 - nb * m3);
    mean += d_n * nb;
    m2 = m2n;
    m3 = m3n;
    m4 = m4n;
    count += o.count;
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }

  double variance() const { return count > 0 ? m2 / double(count) : 0.0; }
  double sample_variance() const {
    return count > 1 ? m2 / double(count - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(std::max(0.0, sample_variance())); }
  double se_mean() const {
    return count > 0 ? stddev() / std::sqrt(double(count)) : 0.0;
  }
  // Population excess-free kurtosis n·m4/m2².
  double kurtosis() const {
    return m2 > 0.0 ? double(count) * m4 / (m2 * m2) : 0.0;
  }
  double second_raw_moment() const {
    return count > 0 ? variance() + mean * mean : 0.0;
  }
  double fourth_central_moment() const {
    return count > 0 ? m4 / double(count) : 0.0;
  }
};

inline Accumulator combine(const Accumulator& a, const Accumulator& b) {
  Accumulator r = a;
  r.merge(b);
  return r;
}

// Point estimate with a symmetric or score-based confidence interval.
struct EstimateReport {
  double point = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t trials = 0;
};

// Normal-theory interval for the mean of an accumulator.
inline EstimateReport mean_report(const Accumulator& acc, double z = 1.959963984540054) {
  EstimateReport r;
  r.point = acc.mean;
  r.se = acc.se_mean();
  r.ci_low = r.point - z * r.se;
  r.ci_high = r.point + z * r.se;
  r.trials = acc.count;
  return r;
}

// Wilson score interval for a binomial proportion.
inline EstimateReport wilson_interval(std::int64_t successes, std::int64_t trials,
                                      double z = 1.959963984540054) {
  if (trials < 1) throw OutOfRange("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw OutOfRange("wilson_interval: successes must lie in [0, trials]");
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double denom = n + z2;
  const double center = (double(successes) + z2 / 2.0) / denom;
  const double half =
      (z / denom) * std::sqrt(p * (1.0 - p) * n + z2 / 4.0);
  EstimateReport r;
  r.point = p;
  r.se = std::sqrt(p * (1.0 - p) / n);
  r.ci_low = std::max(0.0, center - half);
  r.ci_high = std::min(1.0, center + half);
  r.trials = trials;
  // Keep the invariant ci_low <= point <= ci_high also at the 0/n boundaries,
  // where the score interval never collapses onto the point estimate.
  r.ci_low = std::min(r.ci_low, r.point);
  r.ci_high = std::max(r.ci_high, r.point);
  return r;
}

}  // namespace dicelab
