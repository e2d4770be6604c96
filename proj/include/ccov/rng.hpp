#pragma once

#include <cmath>
#include <cstdint>

namespace ccov {

/// Deterministic 64-bit generator (SplitMix64). Used for every random choice in
/// the library so that results are bit-identical across platforms and standard
/// libraries; std::shuffle / std::*_distribution are deliberately avoided.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n). Rejection sampling, n >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller (one value per call, deterministic).
  double next_gaussian() {
    double u;
    do { u = next_double(); } while (u <= 0.0);
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

 private:
  std::uint64_t state_;
};

/// Counter-based sub-seed derivation: sub_seed(s, n) = mix(s XOR mix(golden * (n+1)))
/// where mix is one SplitMix64 output step. Every nested random computation
/// (fold f of a split plan, feature f of a discretizer, restart r of k-means,
/// dataset d of an experiment) draws its seed this way, so each sub-computation
/// is independently reproducible from the master seed and its counter path.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t counter) {
  SplitMix64 mixer(0x9E3779B97F4A7C15ULL * (counter + 1));
  SplitMix64 derived(seed ^ mixer.next());
  return derived.next();
}

}  // namespace ccov
