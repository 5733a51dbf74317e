#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace linlayout {

/// PCG32 (XSH-RR output, 64-bit LCG state) with O'Neill's reference
/// constants and seeding procedure, so streams match other implementations
/// of pcg32_srandom_r / pcg32_random_r bit for bit.
class Pcg32 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kDefaultStream = 54;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) noexcept {
    inc_ = (stream << 1u) | 1u;
    next();
    state_ += seed;
    next();
  }

  std::uint32_t next() noexcept {
    const std::uint64_t old = state_;
    state_ = old * kMultiplier + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  /// Uniform in [0, bound) by rejection: draws below 2^32 mod bound are
  /// discarded so every residue is equally likely. bound must be > 0.
  std::uint32_t bounded(std::uint32_t bound) noexcept {
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      const std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30u)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27u)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31u);
}

/// Seed for one sentence: mix64(mix64(global_seed) ^ ordinal). Independent
/// of scheduling order, so parallel runs reproduce serial ones.
constexpr std::uint64_t sentence_seed(std::uint64_t global_seed, std::uint64_t ordinal) noexcept {
  return mix64(mix64(global_seed) ^ ordinal);
}

/// Fisher-Yates shuffle driven by Pcg32::bounded, from the back.
template <class T>
void shuffle(std::span<T> values, Pcg32& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = rng.bounded(static_cast<std::uint32_t>(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

}  // namespace linlayout
