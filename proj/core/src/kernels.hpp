// Branchless scans over the delta array. A bit is eligible when
// last[i] < cutoff; cutoff = INT64_MAX lifts the tabu filter.
#pragma once

#include <cstddef>
#include <cstdint>

#include "dabs/types.hpp"

namespace dabs::kernels {

Energy min_all(const Energy* d, std::size_t n) noexcept;

struct RangeScan {
  Energy lo;       ///< min over eligible bits, +inf if none
  Energy hi;       ///< max over eligible bits
  Energy all_min;  ///< min over every bit
};
RangeScan eligible_range(const Energy* d, const std::int64_t* last, std::int64_t cutoff, std::size_t n) noexcept;

struct PositiveScan {
  Energy posmin;   ///< smallest positive eligible delta, +inf if none
  Energy all_min;
};
PositiveScan eligible_positive_min(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                                   std::size_t n) noexcept;

std::uint64_t count_eligible(const std::int64_t* last, std::int64_t cutoff, std::size_t n) noexcept;
std::uint64_t count_eligible_le(const Energy* d, const std::int64_t* last, std::int64_t cutoff, Energy threshold,
                                std::size_t n) noexcept;

/// Index of the k-th (0-based) eligible bit with d <= threshold, n if none.
std::size_t kth_eligible_le(const Energy* d, const std::int64_t* last, std::int64_t cutoff, Energy threshold,
                            std::uint64_t k, std::size_t n) noexcept;

/// Lowest-index argmin over eligible bits in [begin, end); `end` if none.
std::size_t eligible_argmin(const Energy* d, const std::int64_t* last, std::int64_t cutoff, std::size_t begin,
                            std::size_t end) noexcept;

/// Lowest-index argmin over eligible bits with draws[i] < threshold; n if none.
std::size_t sampled_argmin(const Energy* d, const std::int64_t* last, std::int64_t cutoff,
                           const std::int64_t* draws, std::int64_t threshold, std::size_t n) noexcept;

}  // namespace dabs::kernels
