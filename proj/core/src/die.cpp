#include "dicelab/die.hpp"

#include <algorithm>
#include <cmath>

#include "dicelab/errors.hpp"

namespace dicelab {

namespace {

// Neumaier-compensated sum; the balanced constraint is checked against this.
double stable_sum(const std::vector<double>& xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace

Die::Die(std::vector<double> faces, const IntervalSpec& spec, bool balanced)
    : faces_(std::move(faces)), spec_(spec), balanced_(balanced) {
  if (int(faces_.size()) != spec_.n)
    throw DimensionMismatch("Die: face count does not match spec n");
  for (double f : faces_) {
    if (!(f >= spec_.z1 && f <= spec_.z2))
      throw OutOfRange("Die: face outside the interval");
  }
  sorted_ = faces_;
  std::sort(sorted_.begin(), sorted_.end());
  face_sum_ = stable_sum(faces_);
  if (balanced_) {
    const double defect = std::abs(face_sum_ - spec_.balance_target());
    if (defect > spec_.balance_tolerance())
      throw NotBalanced("Die: face-sum misses the balance target by " +
                        std::to_string(defect));
  }
}

std::int64_t default_max_attempts(int n) {
  return 100 * std::int64_t(std::ceil(std::sqrt(double(n))));
}

Die sample_iid(const IntervalSpec& spec, RngStream& rng) {
  std::vector<double> faces(spec.n);
  for (auto& f : faces) f = rng.uniform(spec.z1, spec.z2);
  return Die(std::move(faces), spec, false);
}

Die sample_balanced(const IntervalSpec& spec, RngStream& rng,
                    std::int64_t max_attempts) {
  if (max_attempts < 0) max_attempts = default_max_attempts(spec.n);
  if (max_attempts < 1)
    throw OutOfRange("sample_balanced: max_attempts must be >= 1");
  const double target = spec.balance_target();
  std::vector<double> faces(spec.n);
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    // Draw n-1 free faces, tracking the partial sum with compensation so the
    // final face pins the sum to the target up to one rounding.
    double s = 0.0, c = 0.0;
    for (int i = 0; i + 1 < spec.n; ++i) {
      const double f = rng.uniform(spec.z1, spec.z2);
      faces[i] = f;
      const double t = s + f;
      if (std::abs(s) >= std::abs(f))
        c += (s - t) + f;
      else
        c += (f - t) + s;
      s = t;
    }
    const double last = target - (s + c);
    if (last >= spec.z1 && last <= spec.z2) {
      faces[spec.n - 1] = last;
      return Die(faces, spec, true);
    }
  }
  throw AttemptsExhausted("sample_balanced: no acceptance in " +
                          std::to_string(max_attempts) + " attempts");
}

BeatsOutcome beats_naive(const Die& a, const Die& b) {
  if (a.n() != b.n()) throw DimensionMismatch("beats_naive: face counts differ");
  std::int64_t margin = 0;
  for (double x : a.faces())
    for (double y : b.faces()) margin += (x > y) - (x < y);
  BeatsOutcome out;
  out.margin = margin;
  out.result = margin > 0   ? BeatsResult::FirstWins
               : margin < 0 ? BeatsResult::SecondWins
                            : BeatsResult::Draw;
  return out;
}

BeatsOutcome beats_fast(const Die& a, const Die& b) {
  if (a.n() != b.n()) throw DimensionMismatch("beats_fast: face counts differ");
  const auto& xs = a.sorted_faces();
  const auto& ys = b.sorted_faces();
  const std::int64_t n = std::int64_t(xs.size());
  // One merge pass: for each x, count of y < x minus count of y > x.
  std::int64_t margin = 0;
  std::size_t lo = 0, hi = 0;  // y's strictly below / at most x
  for (double x : xs) {
    while (lo < ys.size() && ys[lo] < x) ++lo;
    if (hi < lo) hi = lo;
    while (hi < ys.size() && ys[hi] <= x) ++hi;
    margin += std::int64_t(lo) - (n - std::int64_t(hi));
  }
  BeatsOutcome out;
  out.margin = margin;
  out.result = margin > 0   ? BeatsResult::FirstWins
               : margin < 0 ? BeatsResult::SecondWins
                            : BeatsResult::Draw;
  return out;
}

Die rescale(const Die& a, const IntervalSpec& target) {
  if (target.n != a.n()) throw DimensionMismatch("rescale: face counts differ");
  const IntervalSpec& src = a.spec();
  const double ratio = target.length() / src.length();
  std::vector<double> faces(a.faces().size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    double y = target.z1 + (a.faces()[i] - src.z1) * ratio;
    // The affine image can overshoot an endpoint by an ulp; clamp.
    faces[i] = std::clamp(y, target.z1, target.z2);
  }
  return Die(std::move(faces), target, a.is_balanced());
}

int f_count(const Die& a, double x) {
  const auto& s = a.sorted_faces();
  return int(std::upper_bound(s.begin(), s.end(), x) - s.begin());
}

}  // namespace dicelab
