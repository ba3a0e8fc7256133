#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dicelab/quadrature.hpp"

namespace dicelab {

// Cumulants of the uniform law on [-sqrt3, sqrt3] (unit variance):
// gamma_2 = 1, gamma_4 = -6/5, gamma_6 = 48/7, odd orders 0; scaled
// Gamma_k = gamma_k/k!. Orders up to 10 are provided, enough for the
// expansion terms q_nu with nu <= 8.
class CumulantSet {
 public:
  static const CumulantSet& uniform_symmetric();

  double gamma(int k) const;
  double big_gamma(int k) const;  // gamma(k)/k!
  int max_order() const { return max_order_; }

 private:
  CumulantSet(std::vector<double> gammas, int max_order)
      : gammas_(std::move(gammas)), max_order_(max_order) {}
  std::vector<double> gammas_;  // index k
  int max_order_;
};

// Probabilists' Hermite polynomial via H_{m+1} = x H_m - m H_{m-1}.
double hermite(int m, double x);

// Expansion term q_nu(x) = (e^{-x^2/2}/sqrt(2 pi)) * sum over nonnegative
// integer solutions of k_1 + 2 k_2 + ... + nu k_nu = nu of
// H_{nu+2s}(x) * prod Gamma_{m+2}^{k_m}/k_m!, s = sum k_m. Terms with odd
// cumulants vanish for the symmetric uniform law, so q_nu = 0 for odd nu.
double q_nu(int nu, double x,
            const CumulantSet& cumulants = CumulantSet::uniform_symmetric());

// Density approximation for the normalized sum of n iid uniforms on
// [-sqrt3, sqrt3]: standard normal plus sum_{nu <= order} q_nu(x)/n^{nu/2}.
// order in {0, 2, 4}.
double edgeworth_density(int n, double x, int order);

// Unnormalized-sum density phi_tilde_n(x) = (1/sqrt n) phi_n(x/sqrt n).
double scaled_density(int n, double x, int order);

// Constants of the expanded polynomial form of phi_tilde for |x| = O(1):
// phi_tilde_n(x) ~ (1/sqrt(2 pi n)) (1 + A/n - x^2/2n + C/n^2 - A x^2/2n^2
//                  + E x^2/n^2 + x^4/8n^2).
inline constexpr double kPhiTildeA = -3.0 / 20.0;   // 3*Gamma_4
inline constexpr double kPhiTildeC = -1.0 / 7.0 + 21.0 / 160.0;
inline constexpr double kPhiTildeE = 3.0 / 10.0;    // -6*Gamma_4
double scaled_density_poly(int n, double x);

// Exact density of the sum of n iid uniforms on [-sqrt3, sqrt3] via the
// alternating-sum formula, with compensated summation. The cancellation in
// the alternating sum grows exponentially, so n is capped at 40.
class IrwinHall {
 public:
  explicit IrwinHall(int n);
  int n() const { return n_; }
  double operator()(double x) const;
  // Knots of the piecewise-polynomial density, in sum units.
  std::vector<double> breakpoints() const;

 private:
  int n_;
  std::vector<double> binom_;  // C(n, k) as exact doubles
  double inv_factorial_;       // 1/(n-1)!
};

double irwin_hall_density(int n, double x);

// Truncation order of the closed-form correction factors.
enum class CorrectionOrder { OneOverN, OneOverN2 };

// Closed-form p_{n-k}(x): the density reweighting of k free faces of a
// balanced die. k in {1,2} supports both orders, k in {3,4} only 1/n.
double correction_factor_closed(int n, int k, double x,
                                CorrectionOrder order = CorrectionOrder::OneOverN2);

enum class DensityBackend { Auto, Exact, Edgeworth };

// Direct-ratio correction factor p_{n-k}(x) = phi_tilde_{n-k}(x) / Z with the
// normalizer Z = E[phi_tilde_{n-k}(V_1+...+V_k)] computed by tensor
// Gauss-Legendre quadrature. Computes Z once at construction.
class DirectCorrectionFactor {
 public:
  DirectCorrectionFactor(int n, int k, DensityBackend backend = DensityBackend::Auto,
                         const QuadratureOptions& opts = {});
  double operator()(double x) const;
  double normalizer() const { return z_; }

 private:
  int n_, k_;
  std::function<double(double)> density_;
  double z_;
};

double correction_factor_direct(int n, int k, double x,
                                DensityBackend backend = DensityBackend::Auto,
                                const QuadratureOptions& opts = {});

// Which correction weights to use in conditional_expect.
enum class ConditionalBackend { ClosedForm, Direct };

struct ConditionalOptions {
  ConditionalBackend backend = ConditionalBackend::ClosedForm;
  DensityBackend direct_backend = DensityBackend::Auto;
  // 0 = auto: 64 nodes per axis, 32 when k = 4.
  int nodes = 0;
  std::int64_t budget = 400'000'000;
  // Split the cube into coordinate-ordering regions (needed for max-type
  // integrands to reach quadrature-exactness; harmless otherwise).
  bool split = true;
};

// E[f(faces)] for faces of independent balanced dice at size n on the
// symmetric interval. `groups` lists how many of f's arguments come from
// each die, in argument order: {2} = f(a1,a2); {1,1} = f(a1,b1);
// {2,1} = f(a1,a2,b1); {2,2} = f(a1,a2,b1,b2). Each group of size j is
// weighted by p_{n-j}(sum of that group's arguments).
double conditional_expect(const Integrand& f, const std::vector<int>& groups,
                          int n, const ConditionalOptions& opts = {});

// The pure (uncorrected) moments of iid uniforms used as quadrature anchors,
// with their exact values; every row is checked to 1e-10.
struct SimpleIntegralRow {
  std::string name;
  double exact = 0.0;
  double quadrature = 0.0;
  double abs_err = 0.0;
  bool pass = false;
};

std::vector<SimpleIntegralRow> simple_integrals_table();

}  // namespace dicelab
