#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dabs/model.hpp"
#include "dabs/random.hpp"
#include "dabs/types.hpp"

namespace dabs {

/// Per-run knobs of the main search algorithms.
struct SearchParams {
  std::uint64_t iterations = 1;       ///< T, flips per main-search run
  std::uint64_t tabu_period = 8;
  std::uint64_t cyclic_min_width = 32;  ///< CyclicMin window floor c
  /// RandomMin candidate-probability floor; negative selects 32 / n.
  double random_min_prob_floor = -1.0;
};

/// Result of a 1-bit neighbourhood scan.
struct ScanResult {
  std::size_t index;
  Energy energy;
};

/// Incremental search state over one model: the current vector, its exact
/// energy, every flip gain delta[k] = E(f_k(X)) - E(X), the best vector seen
/// among scanned neighbours, and per-bit flip timestamps for tabu filtering.
///
/// Single owner. The model must outlive the state.
class SearchState {
 public:
  /// X = 0, E = 0, delta = diag(W), no best yet.
  explicit SearchState(const QuboModel& model);

  const QuboModel& model() const noexcept { return *model_; }
  std::size_t size() const noexcept { return x_.size(); }

  const BitVector& x() const noexcept { return x_; }
  Energy energy() const noexcept { return energy_; }
  std::span<const Energy> delta() const noexcept { return delta_; }
  const BitVector& best_x() const noexcept { return best_x_; }
  Energy best_energy() const noexcept { return best_energy_; }

  /// Flips performed since construction.
  std::uint64_t flip_count() const noexcept { return flip_count_; }
  /// Flip ordinal at which `bit` was last flipped, or a large negative value.
  std::int64_t last_flip(std::size_t bit) const noexcept { return last_flip_[bit]; }
  /// Order-sensitive hash of every flipped index; equal digests mean equal
  /// flip sequences for practical purposes.
  std::uint64_t flip_digest() const noexcept { return flip_digest_; }

  /// X <- f_i(X) with O(deg(i)) updates of energy and delta.
  void flip(std::size_t i);

  /// Step 1 of every incremental search iteration: finds the best 1-bit
  /// neighbour (lowest index on ties) and records it as best if it improves.
  ScanResult neighbor_scan();

  /// Forgets the best record (best energy becomes +infinity).
  void reset_best() noexcept { best_energy_ = kEnergyInfinity; }

  /// Tabu rule: a bit flipped at ordinal f may flip again once more than
  /// `period` further flips have happened.
  bool eligible(std::size_t bit, std::uint64_t period) const noexcept {
    return last_flip_[bit] < tabu_cutoff(period);
  }
  /// Equivalent threshold form: `bit` is eligible iff last_flip(bit) < cutoff.
  std::int64_t tabu_cutoff(std::uint64_t period) const noexcept {
    return static_cast<std::int64_t>(flip_count_) - static_cast<std::int64_t>(period);
  }
  std::span<const std::int64_t> last_flips() const noexcept { return last_flip_; }

  /// Cheap form of neighbor_scan used inside the algorithms: only locates the
  /// argmin when it improves the best record.
  void update_best();
  /// update_best() for a caller that already knows min(delta).
  void offer_min_delta(Energy min_delta);

 private:
  void record_best(std::size_t index, Energy e);

  const QuboModel* model_;
  BitVector x_;
  Energy energy_ = 0;
  std::vector<Energy> delta_;
  BitVector best_x_;
  Energy best_energy_ = kEnergyInfinity;
  std::uint64_t flip_count_ = 0;
  std::vector<std::int64_t> last_flip_;
  std::uint64_t flip_digest_ = 0xCBF29CE484222325ull;
};

/// True when the tabu rule allows flipping `bit` now.
inline bool tabu_filter(const SearchState& state, const SearchParams& params, std::size_t bit) {
  return state.eligible(bit, params.tabu_period);
}

/// Flip the minimum-gain bit until no gain is negative. Returns flips used.
std::uint64_t run_greedy(SearchState& state);

/// Walk to `target`, always flipping the differing bit with minimum gain.
/// Returns the Hamming distance covered.
std::uint64_t run_straight(SearchState& state, const BitVector& target);

void run_maxmin(SearchState& state, const SearchParams& params, Xorshift64& rng);
void run_cyclicmin(SearchState& state, const SearchParams& params);
void run_randommin(SearchState& state, const SearchParams& params, Xorshift64& rng);
void run_positivemin(SearchState& state, const SearchParams& params, Xorshift64& rng);
/// Flips 0, 1, 0, 2, 1, ..., n-1, n-2 (2n - 1 flips), scanning every state.
void run_twoneighbor(SearchState& state);

/// Dispatches to the main search algorithm `algorithm`. Returns flips used.
std::uint64_t run_main(MainAlgorithm algorithm, SearchState& state, const SearchParams& params,
                       Xorshift64& rng);

}  // namespace dabs
