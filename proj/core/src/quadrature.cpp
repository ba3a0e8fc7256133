#include "dicelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "dicelab/errors.hpp"

namespace dicelab {

namespace {

struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Roots of the Legendre polynomial by Newton iteration from the Chebyshev
// initial guess; converges to machine precision in a handful of steps.
GlRule build_rule(int m) {
  GlRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // One refinement step after convergence, then recompute dp.
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= m; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    rule.nodes[m - 1 - i] = x;  // ascending order
    rule.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GlRule& rule_for(int m) {
  if (m < 1) throw OutOfRange("gauss-legendre: need at least 1 node");
  static std::map<int, GlRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_rule(m)).first;
  return it->second;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

const std::vector<double>& gl_nodes(int m) { return rule_for(m).nodes; }
const std::vector<double>& gl_weights(int m) { return rule_for(m).weights; }

double integrate_box(const Integrand& f, int k, double lo, double hi,
                     const QuadratureOptions& opts) {
  if (k < 1 || k > 8) throw OutOfRange("integrate_box: need 1 <= k <= 8");
  const auto& xs = gl_nodes(opts.nodes);
  const auto& ws = gl_weights(opts.nodes);
  const int m = opts.nodes;
  if (ipow(m, k) > opts.budget)
    throw QuadratureBudgetExceeded("integrate_box: evaluation budget exceeded");
  const double half = (hi - lo) / 2.0, mid = (hi + lo) / 2.0;

  std::vector<int> idx(k, 0);
  double total = 0.0;
  std::vector<double> pt(k);
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < k; ++d) {
      pt[d] = mid + half * xs[idx[d]];
      w *= half * ws[idx[d]];
    }
    total += w * f(pt.data());
    int d = 0;
    while (d < k && ++idx[d] == m) idx[d++] = 0;
    if (d == k) break;
  }
  return total;
}

double integrate_ordered(const Integrand& f, int k, double lo, double hi,
                         const QuadratureOptions& opts) {
  if (k < 1 || k > 6) throw OutOfRange("integrate_ordered: need 1 <= k <= 6");
  if (k == 1) return integrate_box(f, 1, lo, hi, opts);
  const int m = opts.nodes;
  std::int64_t fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  if (fact * ipow(m, k) > opts.budget)
    throw QuadratureBudgetExceeded(
        "integrate_ordered: evaluation budget exceeded");
  const auto& xs = gl_nodes(m);
  const auto& ws = gl_weights(m);

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  std::vector<int> idx(k, 0);
  std::vector<double> t(k), y(k), pt(k);
  do {
    // Region x_perm[0] <= x_perm[1] <= ... <= x_perm[k-1].
    for (std::fill(idx.begin(), idx.end(), 0);;) {
      double w = 1.0;
      // t_0 on [lo,hi]; t_i (i>=1) on [0,1].
      t[0] = (hi + lo) / 2.0 + (hi - lo) / 2.0 * xs[idx[0]];
      w *= (hi - lo) / 2.0 * ws[idx[0]];
      for (int d = 1; d < k; ++d) {
        t[d] = 0.5 + 0.5 * xs[idx[d]];
        w *= 0.5 * ws[idx[d]];
      }
      y[0] = t[0];
      double jac = 1.0;
      for (int d = 1; d < k; ++d) {
        y[d] = y[d - 1] + (hi - y[d - 1]) * t[d];
        jac *= hi - y[d - 1];
      }
      for (int d = 0; d < k; ++d) pt[perm[d]] = y[d];
      total += w * jac * f(pt.data());
      int d = 0;
      while (d < k && ++idx[d] == m) idx[d++] = 0;
      if (d == k) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace dicelab
