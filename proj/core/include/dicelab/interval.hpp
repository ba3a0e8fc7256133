#pragma once

#include <cmath>
#include <string>

#include "dicelab/errors.hpp"

namespace dicelab {

inline constexpr double kSqrt3 = 1.7320508075688772935;

// Face interval [z1, z2] together with the face count n. The balance target
// n·(z1+z2)/2 is always recomputed, never stored.
struct IntervalSpec {
  double z1 = 0.0;
  double z2 = 1.0;
  int n = 2;

  IntervalSpec() = default;
  IntervalSpec(double lo, double hi, int faces) : z1(lo), z2(hi), n(faces) {
    if (!(z1 < z2)) throw OutOfRange("IntervalSpec: z1 must be < z2");
    if (n < 2) throw OutOfRange("IntervalSpec: need n >= 2");
    if (!std::isfinite(z1) || !std::isfinite(z2))
      throw OutOfRange("IntervalSpec: endpoints must be finite");
  }

  double length() const { return z2 - z1; }
  double balance_target() const { return n * (z1 + z2) / 2.0; }
  // Var of a uniform roll V on [z1, z2]; exact.
  double var_h() const { return length() * length() / 12.0; }
  // Validation tolerance for the balanced face-sum constraint.
  double balance_tolerance() const {
    return 1e-9 * n * std::max(1.0, std::abs(length()));
  }

  bool same_interval(const IntervalSpec& o) const {
    return z1 == o.z1 && z2 == o.z2;
  }
  bool is_symmetric() const {
    return std::abs(z1 + kSqrt3) <= 1e-12 && std::abs(z2 - kSqrt3) <= 1e-12;
  }

  // The three named presets: unit [0,1], wide [0,n], symmetric [-sqrt3, sqrt3].
  static IntervalSpec unit(int n) { return IntervalSpec(0.0, 1.0, n); }
  static IntervalSpec wide(int n) { return IntervalSpec(0.0, double(n), n); }
  static IntervalSpec symmetric(int n) { return IntervalSpec(-kSqrt3, kSqrt3, n); }

  std::string describe() const {
    return "[" + std::to_string(z1) + ", " + std::to_string(z2) +
           "], n=" + std::to_string(n);
  }
};

}  // namespace dicelab
