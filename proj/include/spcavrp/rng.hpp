#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spcavrp {

/// SplitMix64 finalizer. Used as the mixing function for deriving substream
/// seeds from (master_seed, indices); the constants are Vigna's.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream seed for cell (i) of a master stream.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t i) {
  return mix64(master ^ mix64(i + 0x51afd7ed558ccd25ULL));
}

/// Substream seed for cell (i, j) of a master stream. Deterministic in all
/// three arguments, so grids of streams can be filled in any order.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t i,
                                    std::uint64_t j) {
  return substream_seed(substream_seed(master, i), j);
}

/// Deterministic random stream: a seeded mt19937_64 (its output sequence is
/// pinned by the standard) with portable bounded-integer, unit-uniform and
/// Gaussian draws on top. std::*_distribution is implementation-defined, so
/// none of it is used here.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (-n) % n;
      while (lo < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal variate via the Marsaglia polar method. The second
  /// variate of each accepted pair is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform_unit() - 1.0;
      v = 2.0 * uniform_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * factor;
    has_cached_ = true;
    return u * factor;
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace spcavrp
