#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace rr {

// Seeded draw source shared by every sampler. The generator is the standard
// mt19937_64, so the raw 64-bit stream is reproducible bit-for-bit across
// platforms for a given seed. Draws are consumed exactly once; the class is
// deliberately non-copyable so a draw sequence cannot be forked or replayed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exactly uniform on {0, ..., k-1} via rejection.
  std::uint64_t uniform_int(std::uint64_t k) {
    if (k == 0) throw std::logic_error("uniform_int: k must be >= 1");
    const std::uint64_t threshold = (-k) % k;  // 2^64 mod k
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % k;
    }
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Seed for replication `index` of a batch: the index-th output of a SplitMix64
// sequence initialized with `base`. Closed form, so any replication can be
// reproduced in isolation.
inline std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index) {
  return detail::splitmix64_mix(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace rr
