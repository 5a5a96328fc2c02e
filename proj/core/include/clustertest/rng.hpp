#pragma once

#include <cstdint>

namespace clustertest {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Counter-based stream RNG. A stream is identified by a key derived from up
// to four integers (master seed, purpose tag, and two stream coordinates);
// outputs are splitmix64 evaluations along an incrementing counter. Streams
// are independent of scheduling, so sampling is reproducible under any
// degree of parallelism.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c) {
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
    k = mix64(k ^ (a + 0x9e3779b97f4a7c15ULL));
    k = mix64(k ^ (b + 0x9e3779b97f4a7c15ULL));
    k = mix64(k ^ (c + 0x9e3779b97f4a7c15ULL));
    return k;
  }

  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                    std::uint64_t c) {
    return Rng(stream_key(seed, a, b, c));
  }

  std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Unbiased integer in [0, bound), Lemire multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t t = (0 - bound) % bound;
      while (lo < t) {
        x = next();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Purpose tags keeping unrelated sampling streams disjoint.
namespace rng_purpose {
inline constexpr std::uint64_t kGeneric = 0;
inline constexpr std::uint64_t kSampleSet = 1;
inline constexpr std::uint64_t kNormWalks = 2;
inline constexpr std::uint64_t kPairWalks = 3;
inline constexpr std::uint64_t kGenerator = 4;
inline constexpr std::uint64_t kTrial = 5;
}  // namespace rng_purpose

}  // namespace clustertest
