#include "dicelab/gstats.hpp"

#include <algorithm>
#include <cmath>

#include "dicelab/errors.hpp"

namespace dicelab {

namespace {

void require_common(const Die& a, const Die& b, const char* who) {
  if (a.n() != b.n())
    throw DimensionMismatch(std::string(who) + ": face counts differ");
  if (!a.spec().same_interval(b.spec()))
    throw IntervalMismatch(std::string(who) + ": intervals differ");
}

void fill_conditional(GMoments& m) {
  m.var_a_cond = m.var_a - m.cv_a * m.cv_a / m.var_h;
  m.var_b_cond = m.var_b - m.cv_b * m.cv_b / m.var_h;
  m.cv_ab_cond = m.cv_ab - m.cv_a * m.cv_b / m.var_h;
  if (m.var_a_cond > 0.0 && m.var_b_cond > 0.0)
    m.rho_cond = m.cv_ab_cond / std::sqrt(m.var_a_cond * m.var_b_cond);
  else
    m.rho_cond = 0.0;
}

}  // namespace

double g_eval(const Die& a, double x) {
  const IntervalSpec& sp = a.spec();
  if (!(x >= sp.z1 && x <= sp.z2))
    throw OutOfRange("g_eval: x outside the interval");
  return double(f_count(a, x)) - double(sp.n) * (x - sp.z1) / sp.length();
}

double sum_g(const Die& a, const Die& b) {
  require_common(a, b, "sum_g");
  const IntervalSpec& sp = a.spec();
  const double s = double(sp.n) / sp.length();
  double total = 0.0, comp = 0.0;
  for (double x : b.faces()) {
    const double v = double(f_count(a, x)) - s * (x - sp.z1);
    const double t = total + v;
    if (std::abs(total) >= std::abs(v))
      comp += (total - t) + v;
    else
      comp += (v - t) + total;
    total = t;
  }
  return total + comp;
}

double sup_norm_g(const Die& a) {
  const IntervalSpec& sp = a.spec();
  const double s = double(sp.n) / sp.length();
  const auto& xs = a.sorted_faces();
  double best = 0.0;  // |g(z2)| = 0, and g(z1) handled below
  // g(z1) = number of faces exactly at z1.
  {
    std::size_t at_lo = 0;
    while (at_lo < xs.size() && xs[at_lo] == sp.z1) ++at_lo;
    best = std::max(best, double(at_lo));
  }
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double drift = s * (xs[i] - sp.z1);
    best = std::max(best, std::abs(double(i) - drift));  // left limit
    best = std::max(best, std::abs(double(j) - drift));  // value at the jump
    i = j;
  }
  return best;
}

GMoments moments_quadrature(const Die& a, const Die& b) {
  require_common(a, b, "moments_quadrature");
  const IntervalSpec& sp = a.spec();
  const double L = sp.length();
  const double s = double(sp.n) / L;

  // Merged breakpoints of the two staircases.
  std::vector<double> pts;
  pts.reserve(a.sorted_faces().size() + b.sorted_faces().size() + 2);
  pts.push_back(sp.z1);
  std::merge(a.sorted_faces().begin(), a.sorted_faces().end(),
             b.sorted_faces().begin(), b.sorted_faces().end(),
             std::back_inserter(pts));
  pts.push_back(sp.z2);

  double i_a = 0.0, i_b = 0.0;      // integrals of g_A, g_B
  double i_aa = 0.0, i_bb = 0.0;    // of g_A^2, g_B^2
  double i_ab = 0.0;                // of g_A*g_B
  double i_av = 0.0, i_bv = 0.0;    // of g_A*V, g_B*V
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double l = pts[p], r = pts[p + 1];
    if (!(r > l)) continue;
    const double ka = double(f_count(a, l));
    const double kb = double(f_count(b, l));
    const double ul = l - sp.z1, ur = r - sp.z1;
    const double d1 = ur - ul;
    const double d2 = (ur * ur - ul * ul) / 2.0;
    const double d3 = (ur * ur * ur - ul * ul * ul) / 3.0;
    i_a += ka * d1 - s * d2;
    i_b += kb * d1 - s * d2;
    i_aa += ka * ka * d1 - 2.0 * s * ka * d2 + s * s * d3;
    i_bb += kb * kb * d1 - 2.0 * s * kb * d2 + s * s * d3;
    i_ab += ka * kb * d1 - s * (ka + kb) * d2 + s * s * d3;
    // V = u + z1 on the piece.
    i_av += ka * (d2 + sp.z1 * d1) - s * (d3 + sp.z1 * d2);
    i_bv += kb * (d2 + sp.z1 * d1) - s * (d3 + sp.z1 * d2);
  }
  const double mean_a = i_a / L;
  const double mean_b = i_b / L;
  const double mean_v = (sp.z1 + sp.z2) / 2.0;

  GMoments m;
  m.var_h = sp.var_h();
  m.var_a = i_aa / L - mean_a * mean_a;
  m.var_b = i_bb / L - mean_b * mean_b;
  m.cv_ab = i_ab / L - mean_a * mean_b;
  m.cv_a = i_av / L - mean_a * mean_v;
  m.cv_b = i_bv / L - mean_b * mean_v;
  m.sup_a = sup_norm_g(a);
  m.sup_b = sup_norm_g(b);
  fill_conditional(m);
  return m;
}

double sum_max_pairs(const std::vector<double>& xs_sorted,
                     const std::vector<double>& ys_sorted) {
  // Each x_i is the max over the pairs with y_j <= x_i; each y_j is the max
  // over pairs with x_i < y_j. Ties count once, on the x side.
  double total = 0.0;
  std::size_t j = 0;
  for (double x : xs_sorted) {
    while (j < ys_sorted.size() && ys_sorted[j] <= x) ++j;
    total += x * double(j);
  }
  std::size_t i = 0;
  for (double y : ys_sorted) {
    while (i < xs_sorted.size() && xs_sorted[i] < y) ++i;
    total += y * double(i);
  }
  return total;
}

double sum_max_pairs_naive(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  double total = 0.0;
  for (double x : xs)
    for (double y : ys) total += std::max(x, y);
  return total;
}

GMoments moments_closed_form(const Die& a, const Die& b, bool use_naive_sums) {
  require_common(a, b, "moments_closed_form");
  const IntervalSpec& sp = a.spec();
  if (!sp.is_symmetric())
    throw UnsupportedInterval(
        "moments_closed_form: requires the symmetric interval [-sqrt3, sqrt3]");
  for (const Die* d : {&a, &b}) {
    if (std::abs(d->face_sum() - sp.balance_target()) > sp.balance_tolerance())
      throw NotBalanced("moments_closed_form: die is not balanced");
  }
  const double n = double(sp.n);
  double sa = 0.0, sa2 = 0.0, sb = 0.0, sb2 = 0.0;
  for (double x : a.faces()) {
    sa += x;
    sa2 += x * x;
  }
  for (double x : b.faces()) {
    sb += x;
    sb2 += x * x;
  }
  const double max_aa = use_naive_sums
                            ? sum_max_pairs_naive(a.faces(), a.faces())
                            : sum_max_pairs(a.sorted_faces(), a.sorted_faces());
  const double max_bb = use_naive_sums
                            ? sum_max_pairs_naive(b.faces(), b.faces())
                            : sum_max_pairs(b.sorted_faces(), b.sorted_faces());
  const double max_ab = use_naive_sums
                            ? sum_max_pairs_naive(a.faces(), b.faces())
                            : sum_max_pairs(a.sorted_faces(), b.sorted_faces());

  GMoments m;
  m.var_h = 1.0;
  // Second moment of g over a uniform roll; the linear face-sum term is kept
  // even though it vanishes (to tolerance) for balanced dice.
  m.var_a = n * n / 12.0 + n / (2.0 * kSqrt3) * sa + n / 12.0 * sa2 -
            max_aa / (2.0 * kSqrt3);
  m.var_b = n * n / 12.0 + n / (2.0 * kSqrt3) * sb + n / 12.0 * sb2 -
            max_bb / (2.0 * kSqrt3);
  m.cv_ab = n * n / 12.0 + n / 24.0 * (sa2 + sb2) - max_ab / (2.0 * kSqrt3);
  m.cv_a = n / (4.0 * kSqrt3) - sa2 / (4.0 * kSqrt3);
  m.cv_b = n / (4.0 * kSqrt3) - sb2 / (4.0 * kSqrt3);
  m.sup_a = sup_norm_g(a);
  m.sup_b = sup_norm_g(b);
  fill_conditional(m);
  return m;
}

}  // namespace dicelab
