#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dabs {

__extension__ typedef unsigned __int128 Uint128;

/// Marsaglia xorshift64* generator. Satisfies UniformRandomBitGenerator so
/// it can also drive <random> distributions, but the helpers below are used
/// inside the library so that streams are identical across standard
/// library implementations.
class Xorshift64 {
 public:
  using result_type = std::uint64_t;

  explicit Xorshift64(std::uint64_t seed = 0x9E3779B97F4A7C15ull) noexcept
      : state_(seed == 0 ? 0x9E3779B97F4A7C15ull : seed) {}

  static constexpr result_type min() noexcept { return 1; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Xorshift64& rng, std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection of the biased low region.
  std::uint64_t x = rng();
  Uint128 m = static_cast<Uint128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<Uint128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform integer in [lo, hi], inclusive.
inline std::int64_t uniform_int(Xorshift64& rng, std::int64_t lo, std::int64_t hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  return lo + static_cast<std::int64_t>(uniform_below(rng, span));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Xorshift64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Xorshift64& rng, double p) noexcept {
  return uniform_unit(rng) < p;
}

/// Expands a root seed into an independent 64-bit seed for `stream` through
/// a Mersenne-twister seeded by a seed sequence. Distinct (root, stream, tag)
/// triples give unrelated seeds; identical triples give identical seeds.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                 std::uint64_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
  std::mt19937_64 mt(seq);
  return mt();
}

}  // namespace dabs
