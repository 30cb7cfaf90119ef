#pragma once

#include <cmath>
#include <cstdint>

namespace dg {

/// Splittable counter-based pseudo random generator (splitmix64 core).
///
/// Deterministic across platforms and independent of calling order once a
/// stream has been derived, which keeps randomized results reproducible
/// regardless of how work is scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(mix(seed ^ kGamma)) {}

  /// Child stream identified by `salt`; does not advance this stream.
  Rng derive(std::uint64_t salt) const {
    Rng child;
    child.state_ = mix(state_ ^ mix(salt + kGamma));
    child.have_cached_normal_ = false;
    return child;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    // modulo bias is irrelevant at the sizes used here
    return next_u64() % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal deviate (Box-Muller, pairwise cached).
  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    have_cached_normal_ = true;
    return r * std::cos(a);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace dg
