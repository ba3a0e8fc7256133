#include "dicelab/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "dicelab/errors.hpp"
#include "dicelab/interval.hpp"

namespace dicelab {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double factorial(int k) {
  double f = 1.0;
  for (int t = 2; t <= k; ++t) f *= t;
  return f;
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

}  // namespace

const CumulantSet& CumulantSet::uniform_symmetric() {
  static const CumulantSet inst(
      [] {
        // gamma_{2k} = 12^k B_{2k} / (2k) for the uniform law on
        // [-sqrt3, sqrt3]; odd cumulants vanish by symmetry.
        std::vector<double> g(11, 0.0);
        g[2] = 1.0;
        g[4] = -6.0 / 5.0;
        g[6] = 48.0 / 7.0;
        g[8] = -432.0 / 5.0;
        g[10] = 20736.0 / 11.0;
        return g;
      }(),
      10);
  return inst;
}

double CumulantSet::gamma(int k) const {
  if (k < 1 || k > max_order_)
    throw OutOfRange("cumulant order " + std::to_string(k) + " not tabulated");
  return gammas_[static_cast<std::size_t>(k)];
}

double CumulantSet::big_gamma(int k) const { return gamma(k) / factorial(k); }

double hermite(int m, double x) {
  if (m < 0) throw OutOfRange("hermite degree must be nonnegative");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int d = 1; d < m; ++d) {
    const double next = x * cur - d * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Accumulates sum over solutions of 1*k_1 + 2*k_2 + ... = remaining of
// prod_m Gamma_{m+2}^{k_m}/k_m! * H_{nu+2s}(x), s = sum k_m.
void accumulate_partitions(int nu, int part, int remaining, int s, double coeff,
                           double x, const CumulantSet& cum, double* total) {
  if (remaining == 0) {
    *total += coeff * hermite(nu + 2 * s, x);
    return;
  }
  if (part > remaining) return;
  const double g = cum.big_gamma(part + 2);
  double scaled = coeff;
  for (int count = 0; count * part <= remaining; ++count) {
    if (count > 0) scaled *= g / count;
    if (scaled != 0.0 || count == 0)
      accumulate_partitions(nu, part + 1, remaining - count * part, s + count,
                            scaled, x, cum, total);
    if (scaled == 0.0 && count > 0) break;  // zero cumulant kills higher counts
  }
}

}  // namespace

double q_nu(int nu, double x, const CumulantSet& cumulants) {
  if (nu < 1 || nu > 8) throw OutOfRange("expansion term order must be in 1..8");
  double total = 0.0;
  accumulate_partitions(nu, 1, nu, 0, 1.0, x, cumulants, &total);
  return normal_pdf(x) * total;
}

double edgeworth_density(int n, double x, int order) {
  if (n < 1) throw OutOfRange("edgeworth_density requires n >= 1");
  if (order != 0 && order != 2 && order != 4)
    throw OutOfRange("edgeworth order must be 0, 2, or 4");
  double density = normal_pdf(x);
  if (order >= 2) density += q_nu(2, x) / n;
  if (order >= 4) density += q_nu(4, x) / (static_cast<double>(n) * n);
  return density;
}

double scaled_density(int n, double x, int order) {
  const double root_n = std::sqrt(static_cast<double>(n));
  return edgeworth_density(n, x / root_n, order) / root_n;
}

double scaled_density_poly(int n, double x) {
  if (n < 1) throw OutOfRange("scaled_density_poly requires n >= 1");
  const double inv_n = 1.0 / n;
  const double inv_n2 = inv_n * inv_n;
  const double x2 = x * x;
  const double bracket = 1.0 + kPhiTildeA * inv_n - 0.5 * x2 * inv_n +
                         kPhiTildeC * inv_n2 - 0.5 * kPhiTildeA * x2 * inv_n2 +
                         kPhiTildeE * x2 * inv_n2 + 0.125 * x2 * x2 * inv_n2;
  return kInvSqrt2Pi / std::sqrt(static_cast<double>(n)) * bracket;
}

IrwinHall::IrwinHall(int n) : n_(n) {
  if (n < 2 || n > 40)
    throw UnsupportedN("exact sum density supports 2 <= n <= 40, got " +
                       std::to_string(n));
  binom_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  binom_[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    binom_[static_cast<std::size_t>(k)] =
        binom_[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  inv_factorial_ = 1.0 / factorial(n - 1);
}

double IrwinHall::operator()(double x) const {
  const double scale = 2.0 * kSqrt3;
  double y = x / scale + 0.5 * n_;
  if (y <= 0.0 || y >= n_) return 0.0;
  // The density is symmetric about n/2. Evaluating on the left half keeps the
  // inclusion-exclusion sum short: near the upper edge all n alternating
  // terms appear and cancel catastrophically (magnitudes up to ~1e15 for
  // n = 40), while on [0, n/2] the partial sums stay within ~1e6 of the
  // result and the error near machine precision.
  if (y > 0.5 * n_) y = double(n_) - y;
  const int top = static_cast<int>(y);
  double sum = 0.0;
  double comp = 0.0;
  for (int k = 0; k <= top; ++k) {
    const double term = ((k & 1) ? -1.0 : 1.0) *
                        binom_[static_cast<std::size_t>(k)] *
                        std::pow(y - k, n_ - 1);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  const double fy = (sum + comp) * inv_factorial_;
  return std::max(0.0, fy) / scale;
}

std::vector<double> IrwinHall::breakpoints() const {
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(n_) + 1);
  for (int j = 0; j <= n_; ++j)
    knots.push_back((j - 0.5 * n_) * 2.0 * kSqrt3);
  return knots;
}

double irwin_hall_density(int n, double x) { return IrwinHall(n)(x); }

double correction_factor_closed(int n, int k, double x, CorrectionOrder order) {
  if (k < 1 || k > 4)
    throw UnsupportedK("closed-form correction factor supports k in 1..4");
  if (n <= k) throw OutOfRange("correction factor requires n > k");
  const double inv_n = 1.0 / n;
  const double x2 = x * x;
  double p = 1.0 + 0.5 * k * inv_n - 0.5 * x2 * inv_n;
  if (order == CorrectionOrder::OneOverN2) {
    if (k > 2)
      throw UnsupportedK(
          "second-order correction factor is only available for k <= 2");
    const double inv_n2 = inv_n * inv_n;
    if (k == 1)
      p += (9.0 / 40.0 - 9.0 / 20.0 * x2 + 0.125 * x2 * x2) * inv_n2;
    else
      p += (6.0 / 5.0 - 6.0 / 5.0 * x2 + 0.125 * x2 * x2) * inv_n2;
  }
  return p;
}

namespace {

// Integral of fn over [lo, hi] by one Gauss-Legendre panel.
double gl_panel(double lo, double hi, int nodes,
                const std::function<double(double)>& fn) {
  const auto& xs = gl_nodes(nodes);
  const auto& ws = gl_weights(nodes);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) acc += ws[static_cast<std::size_t>(i)] * fn(mid + half * xs[static_cast<std::size_t>(i)]);
  return acc * half;
}

}  // namespace

DirectCorrectionFactor::DirectCorrectionFactor(int n, int k,
                                               DensityBackend backend,
                                               const QuadratureOptions& opts)
    : n_(n), k_(k) {
  if (k < 1 || k > 4)
    throw UnsupportedK("direct correction factor supports k in 1..4");
  if (n <= k) throw OutOfRange("correction factor requires n > k");
  const int m = n - k;
  if (backend == DensityBackend::Auto)
    backend = (m <= 40) ? DensityBackend::Exact : DensityBackend::Edgeworth;

  std::vector<double> knots;  // density breakpoints, used for k = 1 panels
  if (backend == DensityBackend::Exact) {
    if (m > 40)
      throw UnsupportedN("exact density backend requires n - k <= 40");
    if (m == 1) {
      density_ = [](double x) {
        return std::abs(x) <= kSqrt3 ? 1.0 / (2.0 * kSqrt3) : 0.0;
      };
      knots = {-kSqrt3, kSqrt3};
    } else {
      auto exact = std::make_shared<IrwinHall>(m);
      density_ = [exact](double x) { return (*exact)(x); };
      knots = exact->breakpoints();
    }
  } else {
    density_ = [m](double x) { return scaled_density(m, x, 4); };
  }

  int nodes = opts.nodes;
  if (k == 4) nodes = std::min(nodes, 32);
  const double cell = 1.0 / std::pow(2.0 * kSqrt3, k);
  if (k == 1 && !knots.empty()) {
    // Piecewise panels between density breakpoints keep the integrand smooth.
    std::vector<double> cuts{-kSqrt3, kSqrt3};
    for (double t : knots)
      if (t > -kSqrt3 && t < kSqrt3) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += gl_panel(cuts[i], cuts[i + 1], nodes, density_);
    z_ = total * cell;
  } else {
    QuadratureOptions qo = opts;
    qo.nodes = nodes;
    auto fn = [this, k](const double* x) {
      double s = 0.0;
      for (int d = 0; d < k; ++d) s += x[d];
      return density_(s);
    };
    z_ = integrate_box(fn, k, -kSqrt3, kSqrt3, qo) * cell;
  }
}

double DirectCorrectionFactor::operator()(double x) const {
  return density_(x) / z_;
}

double correction_factor_direct(int n, int k, double x, DensityBackend backend,
                                const QuadratureOptions& opts) {
  return DirectCorrectionFactor(n, k, backend, opts)(x);
}

double conditional_expect(const Integrand& f, const std::vector<int>& groups,
                          int n, const ConditionalOptions& opts) {
  if (groups.empty())
    throw OutOfRange("conditional_expect requires at least one group");
  int dims = 0;
  for (int g : groups) {
    if (g < 1 || g > 4)
      throw UnsupportedK("conditional_expect group sizes must be in 1..4");
    dims += g;
  }
  if (dims > 8) throw OutOfRange("conditional_expect supports at most 8 faces");

  std::vector<std::function<double(double)>> weight;
  weight.reserve(groups.size());
  if (opts.backend == ConditionalBackend::ClosedForm) {
    for (int g : groups) {
      const CorrectionOrder order =
          g <= 2 ? CorrectionOrder::OneOverN2 : CorrectionOrder::OneOverN;
      weight.push_back([n, g, order](double s) {
        return correction_factor_closed(n, g, s, order);
      });
    }
  } else {
    std::map<int, std::shared_ptr<DirectCorrectionFactor>> cache;
    QuadratureOptions qo;
    qo.budget = opts.budget;
    for (int g : groups) {
      auto& factor = cache[g];
      if (!factor)
        factor = std::make_shared<DirectCorrectionFactor>(
            n, g, opts.direct_backend, qo);
      weight.push_back([factor](double s) { return (*factor)(s); });
    }
  }

  auto integrand = [&](const double* x) {
    double w = 1.0;
    int off = 0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      double s = 0.0;
      for (int t = 0; t < groups[j]; ++t) s += x[off + t];
      w *= weight[j](s);
      off += groups[j];
    }
    return w * f(x);
  };

  QuadratureOptions qo;
  qo.budget = opts.budget;
  double integral;
  if (opts.split && dims >= 2 && dims <= 6) {
    qo.nodes = opts.nodes > 0 ? opts.nodes : 20;
    integral = integrate_ordered(integrand, dims, -kSqrt3, kSqrt3, qo);
  } else {
    qo.nodes = opts.nodes > 0 ? opts.nodes : (dims >= 4 ? 24 : 64);
    integral = integrate_box(integrand, dims, -kSqrt3, kSqrt3, qo);
  }
  return integral / std::pow(2.0 * kSqrt3, dims);
}

std::vector<SimpleIntegralRow> simple_integrals_table() {
  struct Spec {
    std::string name;
    int dims;
    double exact;
    double (*fn)(const double*);
  };
  const double s3 = kSqrt3;
  static const auto mx = [](double a, double b) { return a > b ? a : b; };
  const Spec specs[] = {
      {"E[V^2]", 1, 1.0, [](const double* x) { return x[0] * x[0]; }},
      {"E[V^3]", 1, 0.0, [](const double* x) { return x[0] * x[0] * x[0]; }},
      {"E[V^4]", 1, 9.0 / 5.0,
       [](const double* x) { return std::pow(x[0], 4); }},
      {"E[V^6]", 1, 27.0 / 7.0,
       [](const double* x) { return std::pow(x[0], 6); }},
      {"E[max(V1,V2)]", 2, s3 / 3.0,
       [](const double* x) { return mx(x[0], x[1]); }},
      {"E[max(V1,V2)^2]", 2, 1.0,
       [](const double* x) { return mx(x[0], x[1]) * mx(x[0], x[1]); }},
      {"E[max(V1,V2) V1]", 2, 0.5,
       [](const double* x) { return mx(x[0], x[1]) * x[0]; }},
      {"E[max(V1,V2) V1^2]", 2, 2.0 * s3 / 5.0,
       [](const double* x) { return mx(x[0], x[1]) * x[0] * x[0]; }},
      {"E[max(V1,V2) V1^3]", 2, 9.0 / 10.0,
       [](const double* x) { return mx(x[0], x[1]) * std::pow(x[0], 3); }},
      {"E[max(V1,V2) V1^4]", 2, 27.0 * s3 / 35.0,
       [](const double* x) { return mx(x[0], x[1]) * std::pow(x[0], 4); }},
      {"E[max(V1,V2) V1 V2]", 2, -s3 / 5.0,
       [](const double* x) { return mx(x[0], x[1]) * x[0] * x[1]; }},
      {"E[max(V1,V2) V1^2 V2]", 2, 0.5,
       [](const double* x) { return mx(x[0], x[1]) * x[0] * x[0] * x[1]; }},
      {"E[max(V1,V2) V1^2 V2^2]", 2, 3.0 * s3 / 7.0,
       [](const double* x) {
         return mx(x[0], x[1]) * x[0] * x[0] * x[1] * x[1];
       }},
      {"E[max(V1,V2) max(V1,V3)]", 3, 3.0 / 5.0,
       [](const double* x) { return mx(x[0], x[1]) * mx(x[0], x[2]); }},
      {"E[max(V1,V2) max(V1,V3) V1^2]", 3, 33.0 / 35.0,
       [](const double* x) {
         return mx(x[0], x[1]) * mx(x[0], x[2]) * x[0] * x[0];
       }},
      {"E[max(V1,V2) max(V1,V3) V2^2]", 3, 23.0 / 35.0,
       [](const double* x) {
         return mx(x[0], x[1]) * mx(x[0], x[2]) * x[1] * x[1];
       }},
      {"E[max(V1,V2) max(V1,V3) V2 V3]", 3, 13.0 / 35.0,
       [](const double* x) {
         return mx(x[0], x[1]) * mx(x[0], x[2]) * x[1] * x[2];
       }},
  };

  std::vector<SimpleIntegralRow> rows;
  QuadratureOptions qo;
  qo.nodes = 24;
  for (const auto& spec : specs) {
    Integrand fn = spec.fn;
    double integral;
    if (spec.dims == 1)
      integral = integrate_box(fn, 1, -s3, s3, qo);
    else
      integral = integrate_ordered(fn, spec.dims, -s3, s3, qo);
    const double value = integral / std::pow(2.0 * s3, spec.dims);
    SimpleIntegralRow row;
    row.name = spec.name;
    row.exact = spec.exact;
    row.quadrature = value;
    row.abs_err = std::abs(value - spec.exact);
    row.pass = row.abs_err <= 1e-10;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dicelab
