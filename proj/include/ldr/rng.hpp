#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ldr {

// Counter-based deterministic generator. Draw i is a pure function of
// (seed, i), so a stream can be replayed, forked per frame/query, and
// moved across threads without shared state. Identical state always
// yields the identical draw sequence.
class RngState {
 public:
  RngState() = default;
  explicit RngState(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64() { return mix(seed_, counter_++); }

  // Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal (Box-Muller; consumes two draws).
  double next_normal() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Independent substream addressed by tag; the child's draws never
  // collide with the parent's regardless of how far either advances.
  RngState split(std::uint64_t tag) const {
    return RngState(mix(seed_, tag ^ 0xD1B54A32D192ED03ULL));
  }

 private:
  // splitmix64 finalizer over a keyed counter.
  static std::uint64_t mix(std::uint64_t key, std::uint64_t i) {
    std::uint64_t z = key + 0x9E3779B97F4A7C15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace ldr
