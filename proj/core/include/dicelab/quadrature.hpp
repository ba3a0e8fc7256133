#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dicelab {

// Gauss-Legendre nodes/weights on [-1, 1], cached per point count.
const std::vector<double>& gl_nodes(int m);
const std::vector<double>& gl_weights(int m);

struct QuadratureOptions {
  int nodes = 64;
  // Cap on integrand evaluations; exceeded -> QuadratureBudgetExceeded.
  std::int64_t budget = 400'000'000;
};

using Integrand = std::function<double(const double*)>;

// Tensor-product integral of f over the box [lo,hi]^k.
double integrate_box(const Integrand& f, int k, double lo, double hi,
                     const QuadratureOptions& opts = {});

// Same integral, but the box is decomposed into the k! coordinate-ordering
// regions {x_s(1) <= ... <= x_s(k)}, each mapped back to a box by the chained
// substitution y_i = y_{i-1} + (hi - y_{i-1})t_i. Polynomial integrands stay
// polynomial under the substitution, so integrands that are smooth on each
// ordering region (max/min expressions) are integrated to machine precision.
double integrate_ordered(const Integrand& f, int k, double lo, double hi,
                         const QuadratureOptions& opts = {});

}  // namespace dicelab
