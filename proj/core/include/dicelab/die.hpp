#pragma once

#include <cstdint>
#include <vector>

#include "dicelab/interval.hpp"
#include "dicelab/rng.hpp"

namespace dicelab {

// Outcome of the pairwise comparison: margin = sum over face pairs of
// sign(a_i - b_j). Exact ties contribute 0.
enum class BeatsResult { FirstWins, SecondWins, Draw };

struct BeatsOutcome {
  std::int64_t margin = 0;
  BeatsResult result = BeatsResult::Draw;
};

// A die is a vector of n real faces on a fixed interval. Faces are kept in
// insertion order plus an ascending copy for the subquadratic algorithms.
// Immutable after construction, safe to share across threads.
class Die {
 public:
  Die(std::vector<double> faces, const IntervalSpec& spec, bool balanced);

  const std::vector<double>& faces() const { return faces_; }
  const std::vector<double>& sorted_faces() const { return sorted_; }
  const IntervalSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  bool is_balanced() const { return balanced_; }
  double face_sum() const { return face_sum_; }

 private:
  std::vector<double> faces_;
  std::vector<double> sorted_;
  IntervalSpec spec_;
  double face_sum_ = 0.0;
  bool balanced_ = false;
};

// Default rejection budget 100*ceil(sqrt(n)): the acceptance probability of
// the balanced sampler is at least 1/(5*sqrt(n)), so this fails spuriously
// with probability well under 1e-8.
std::int64_t default_max_attempts(int n);

// n faces iid uniform on [z1, z2].
Die sample_iid(const IntervalSpec& spec, RngStream& rng);

// Balanced die by rejection: draw a_1..a_{n-1} iid uniform, set the last face
// to balance_target minus the exact partial sum, accept iff it lands in
// range. Throws AttemptsExhausted after max_attempts rejections.
Die sample_balanced(const IntervalSpec& spec, RngStream& rng,
                    std::int64_t max_attempts = -1);

// O(n^2) double loop over face pairs; the reference oracle.
BeatsOutcome beats_naive(const Die& a, const Die& b);

// Same margin via a linear merge over the sorted faces; O(n log n) total
// (O(n) after construction). Tie runs are counted exactly.
BeatsOutcome beats_fast(const Die& a, const Die& b);

// Unique increasing affine map onto the target interval; balancedness is
// preserved, margins are invariant.
Die rescale(const Die& a, const IntervalSpec& target);

// f_A(x): number of faces <= x. Saturates at 0 and n outside the interval.
int f_count(const Die& a, double x);

}  // namespace dicelab
