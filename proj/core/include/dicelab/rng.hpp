#pragma once

#include <cmath>
#include <cstdint>

namespace dicelab {

// Index-addressable random stream: state is derived from (seed, stream_index)
// by SplitMix64, then iterated with xoshiro256++ (Blackman/Vigna, public
// domain). Distinct stream indices land in unrelated regions of the 2^256
// state space, so per-worker streams are independent without jump-ahead
// bookkeeping. The generator choice is frozen: changing it changes every
// seeded result in the artifact.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_index) {
    // Mix the stream index in with a distinct odd constant so (seed, i) and
    // (seed+1, i-1)-style collisions cannot map to the same SplitMix64 orbit.
    std::uint64_t x = seed ^ (stream_index * 0x9E3779B97F4A7C15ull + 0x1D8E4E27C47D124Full);
    for (auto& w : s_) w = splitmix64(x);
    // All-zero state is the one forbidden xoshiro state; SplitMix64 output is
    // equidistributed so this is unreachable in practice, but keep it sound.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ull;
    seed_ = seed;
    stream_ = stream_index;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal via Marsaglia polar; consumes a variable number of draws.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dicelab
