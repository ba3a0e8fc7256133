#pragma once

#include <vector>

#include "dicelab/die.hpp"

namespace dicelab {

// Second-moment statistics of (U_A, U_B, V) where U_A = g_A(V) and V is a
// uniform roll on the dice's interval, plus the conditional versions that
// survive conditioning on the face-sum. var_h is the interval variance
// (z2-z1)^2/12, exact by construction.
struct GMoments {
  double var_a = 0.0;
  double var_b = 0.0;
  double cv_ab = 0.0;
  double cv_a = 0.0;
  double cv_b = 0.0;
  double var_h = 0.0;
  double var_a_cond = 0.0;
  double var_b_cond = 0.0;
  double cv_ab_cond = 0.0;
  double sup_a = 0.0;
  double sup_b = 0.0;
  // Correlation of the conditioned Gaussian surrogate; 0 when a conditional
  // variance is nonpositive (degenerate case, surfaced by callers that care).
  double rho_cond = 0.0;
};

// g_A(x) = f_A(x) - n*(x-z1)/(z2-z1). Throws OutOfRange outside [z1, z2].
double g_eval(const Die& a, double x);

// Sum of g_A over the faces of B. Requires equal n and the same interval.
// For balanced dice with no ties this is half the (B vs A) margin, positive
// exactly when B beats A; for balanced odd-n dice it lies in Z + 1/2.
double sum_g(const Die& a, const Die& b);

// Exact sup norm of g_A, attained at a face (from either side) or endpoint;
// between jumps g decreases linearly so no interior point can compete.
double sup_norm_g(const Die& a);

// Reference implementation: every moment from exact piecewise integration of
// the two staircase functions over the merged breakpoints. Any interval.
GMoments moments_quadrature(const Die& a, const Die& b);

// Fast path: closed-form second moments on the symmetric interval
// [-sqrt3, sqrt3] for balanced dice. The pairwise-max double sums run in
// O(n log n) via sorting and suffix counts; use_naive_sums switches to the
// O(n^2) fallback for cross-checks.
GMoments moments_closed_form(const Die& a, const Die& b,
                             bool use_naive_sums = false);

// Sum over all ordered pairs (i,j) of max{x_i, y_j}; O(n log n).
double sum_max_pairs(const std::vector<double>& xs_sorted,
                     const std::vector<double>& ys_sorted);
double sum_max_pairs_naive(const std::vector<double>& xs,
                           const std::vector<double>& ys);

}  // namespace dicelab
