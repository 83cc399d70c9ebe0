#pragma once

#include <cstdint>

namespace qsim {

// Deterministic 64-bit generator (SplitMix64).  The update recurrence is
//
//   state += 0x9E3779B97F4A7C15
//   z  = state
//   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27;  z *= 0x94D049BB133111EB
//   z ^= z >> 31
//
// so an independent implementation seeded with the same value reproduces the
// identical stream byte for byte.  Doubles use the top 53 bits of one output.
// An Rng is an explicit mutable value owned by the caller; concurrent use
// requires independent instances (see split()).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n), rejection-sampled so every value is equally likely.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  // Derived stream k: child seed = mix(parent seed ^ (k+1)*phi) where mix is
  // one SplitMix64 output step.  Streams for distinct k never collide in
  // practice and are reproducible from (seed, k) alone.
  Rng split(std::uint64_t k) const {
    Rng mixer(seed_ ^ (k + 1) * 0x9E3779B97F4A7C15ULL);
    return Rng(mixer.next_u64());
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace qsim
