#include "kernels.hpp"

#include <algorithm>
#include <limits>

// Multiversioned on x86-64 GCC so the portable build still gets wide int64
// compares (AVX2 vpcmpgtq, AVX-512 vpminsq) at run time.
#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__) && !defined(DABS_NO_CLONES)
#define DABS_CLONES __attribute__((target_clones("avx512f", "avx2", "default")))
#else
#define DABS_CLONES
#endif

namespace dabs::kernels {

namespace {

constexpr Energy kLowest = std::numeric_limits<Energy>::min();
constexpr std::size_t kBlock = 64;

// All-ones when bit i is eligible. GCC 11 vectorizes the and/or select below
// but not the equivalent ternary.
inline Energy mask_of(std::int64_t last, std::int64_t cutoff) { return -static_cast<Energy>(last < cutoff); }
inline Energy select(Energy mask, Energy yes, Energy no) { return (yes & mask) | (no & ~mask); }

}  // namespace

DABS_CLONES Energy min_all(const Energy* d, std::size_t n) noexcept {
  Energy m = kEnergyInfinity;
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, d[i]);
  return m;
}

DABS_CLONES RangeScan eligible_range(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                     std::size_t n) noexcept {
  Energy lo = kEnergyInfinity;
  Energy hi = kLowest;
  Energy all = kEnergyInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    const Energy v = d[i];
    const Energy ok = mask_of(last[i], cutoff);
    all = std::min(all, v);
    lo = std::min(lo, select(ok, v, kEnergyInfinity));
    hi = std::max(hi, select(ok, v, kLowest));
  }
  return {lo, hi, all};
}

DABS_CLONES PositiveScan eligible_positive_min(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                               std::size_t n) noexcept {
  Energy pos = kEnergyInfinity;
  Energy all = kEnergyInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    const Energy v = d[i];
    const Energy ok = mask_of(last[i], cutoff) & -static_cast<Energy>(v > 0);
    all = std::min(all, v);
    pos = std::min(pos, select(ok, v, kEnergyInfinity));
  }
  return {pos, all};
}

DABS_CLONES std::uint64_t count_eligible(const std::int64_t* last, std::int64_t cutoff, std::size_t n) noexcept {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += last[i] < cutoff;
  return c;
}

DABS_CLONES std::uint64_t count_eligible_le(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                            Energy threshold, std::size_t n) noexcept {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += (last[i] < cutoff) & (d[i] <= threshold);
  return c;
}

DABS_CLONES std::size_t kth_eligible_le(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                        Energy threshold, std::uint64_t k, std::size_t n) noexcept {
  // Skip whole blocks by their vectorized count, then finish bit by bit.
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    std::uint64_t c = 0;
    for (std::size_t j = i; j < i + kBlock; ++j) c += (last[j] < cutoff) & (d[j] <= threshold);
    if (k < c) break;
    k -= c;
  }
  for (; i < n; ++i) {
    if (last[i] < cutoff && d[i] <= threshold) {
      if (k == 0) return i;
      --k;
    }
  }
  return n;
}

DABS_CLONES std::size_t eligible_argmin(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                        std::size_t begin, std::size_t end) noexcept {
  Energy m = kEnergyInfinity;
  for (std::size_t i = begin; i < end; ++i) {
    m = std::min(m, select(mask_of(last[i], cutoff), d[i], kEnergyInfinity));
  }
  // Deltas are bounded well below +inf, so m stays +inf only if nothing is eligible.
  if (m == kEnergyInfinity) return end;
  // The first eligible bit with d == m is the 0th one with d <= m.
  return begin + kth_eligible_le(d + begin, last + begin, cutoff, m, 0, end - begin);
}

DABS_CLONES std::size_t sampled_argmin(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                       const std::int64_t* draws, std::int64_t threshold, std::size_t n) noexcept {
  Energy m = kEnergyInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    const Energy ok = mask_of(last[i], cutoff) & -static_cast<Energy>(draws[i] < threshold);
    m = std::min(m, select(ok, d[i], kEnergyInfinity));
  }
  if (m == kEnergyInfinity) return n;
  const auto hit = [&](std::size_t i) {
    return (mask_of(last[i], cutoff) & -static_cast<Energy>(draws[i] < threshold) & -static_cast<Energy>(d[i] == m)) != 0;
  };
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    Energy any = 0;
    for (std::size_t j = i; j < i + kBlock; ++j) any |= -static_cast<Energy>(hit(j));
    if (any) break;
  }
  for (; i < n; ++i) {
    if (hit(i)) return i;
  }
  return n;
}

}  // namespace dabs::kernels
