// Brute-force references used to freeze expected values in tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "dabs/model.hpp"
#include "dabs/random.hpp"

namespace dabs::testing {

inline BitVector bits_of(std::size_t n, std::uint64_t mask) {
  BitVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((mask >> i) & 1);
  return x;
}

/// Model with every pair present with probability `density`, weights
/// uniform in [lo, hi] (zeros allowed, then dropped by the model).
inline QuboModel random_qubo(std::size_t n, Energy lo, Energy hi, Xorshift64& rng, double density = 1.0) {
  std::vector<QuboTerm> terms;
  std::vector<Energy> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = uniform_int(rng, lo, hi);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (density >= 1.0 || bernoulli(rng, density)) terms.push_back({i, j, uniform_int(rng, lo, hi)});
    }
  }
  return QuboModel(n, std::move(terms), std::move(diag));
}

inline BitVector random_bits(std::size_t n, Xorshift64& rng) {
  BitVector x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1);
  return x;
}

/// Direct O(n + m) evaluation, independent of energy_of.
inline Energy naive_energy(const QuboModel& m, const BitVector& x) {
  Energy e = 0;
  for (std::size_t i = 0; i < m.size(); ++i) e += m.diag()[i] * x[i];
  for (const auto& t : m.off_diag()) e += t.w * x[t.i] * x[t.j];
  return e;
}

/// delta[k] = E(flip_k X) - E(X) by full re-evaluation.
inline std::vector<Energy> naive_delta(const QuboModel& m, const BitVector& x) {
  const Energy base = naive_energy(m, x);
  std::vector<Energy> d(m.size());
  BitVector y = x;
  for (std::size_t k = 0; k < m.size(); ++k) {
    y[k] ^= 1;
    d[k] = naive_energy(m, y) - base;
    y[k] ^= 1;
  }
  return d;
}

struct Optimum {
  Energy energy;
  BitVector x;
  std::size_t count;  ///< number of optimal vectors
};

/// Exhaustive minimum over all 2^n vectors (n <= 24).
inline Optimum brute_force_min(const QuboModel& m) {
  const std::size_t n = m.size();
  Optimum best{naive_energy(m, BitVector(n, 0)), BitVector(n, 0), 0};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const BitVector x = bits_of(n, mask);
    const Energy e = naive_energy(m, x);
    if (e < best.energy) best = {e, x, 1};
    else if (e == best.energy) ++best.count;
  }
  return best;
}

/// Minimum energy over every vector within Hamming distance 2 of x.
inline Energy ball2_min(const QuboModel& m, const BitVector& x) {
  Energy best = naive_energy(m, x);
  BitVector y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] ^= 1;
    best = std::min(best, naive_energy(m, y));
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      y[j] ^= 1;
      best = std::min(best, naive_energy(m, y));
      y[j] ^= 1;
    }
    y[i] ^= 1;
  }
  return best;
}

/// The three-bit model used throughout: diag [-3, -1, -2], W01 = 2, W12 = 4.
inline QuboModel three_bit_model() { return QuboModel(3, {{0, 1, 2}, {1, 2, 4}}, {-3, -1, -2}); }

}  // namespace dabs::testing
