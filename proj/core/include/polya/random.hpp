#pragma once

#include <cstdint>
#include <initializer_list>

namespace polya {

// Counter-based random numbers. Every variate is a pure function of a seed and
// a tuple of counters, so a trial's uniforms do not depend on which worker
// runs it or in what order.
//
// The mixing function is the SplitMix64 finalizer applied along the counter
// tuple; the derivation (seed, trial, time, node) -> Y is part of the
// reproducibility contract and must not change between releases.

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> counters) noexcept {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t c : counters) h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

// Maps 64 random bits to the open interval (0, 1); neither endpoint is ever
// produced, so the draw-rule comparison never sees Y == 0 or Y == 1.
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Uniform used for the draw of `node` at `time` in trial `trial`.
constexpr double draw_uniform(std::uint64_t seed, std::uint64_t trial,
                              std::uint64_t time, std::uint64_t node) noexcept {
  return to_open_unit(derive_key(seed, {trial, time, node}));
}

/// Sequential stream over a counter-based key, for generators and samplers
/// that consume a variable number of variates.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(derive_key(seed, {stream})) {}

  std::uint64_t next_bits() noexcept { return mix64(key_ ^ mix64(counter_++)); }
  double uniform() noexcept { return to_open_unit(next_bits()); }

  // Uniform integer in [0, bound), bound > 0; Lemire's unbiased method.
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = next_bits();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_bits();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace polya
