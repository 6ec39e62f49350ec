#pragma once

// Portable seeded PRNG. The algorithm and constants are frozen: every
// generated series and every jitter draw depends on them bit-for-bit.
//
//   seeding:  SplitMix64 (increment 0x9E3779B97F4A7C15, mixers
//             0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31)
//   stream:   xoshiro256** (rotl(s1 * 5, 7) * 9; shifts 17 and rotl 45)
//   uniform:  top 53 bits scaled by 2^-53, giving [0, 1)
//   normal:   Irwin-Hall sum of 12 uniforms minus 6 (mean 0, variance 1);
//             uses only additions so it is exact across platforms.

#include <array>
#include <cstdint>

namespace cecp {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Approximately standard-normal draw (Irwin-Hall, 12 terms).
  constexpr double normal() noexcept {
    double sum = 0.0;
    for (int i = 0; i < 12; ++i) sum += uniform();
    return sum - 6.0;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace cecp
