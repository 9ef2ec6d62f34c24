#include "dabs/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dabs/error.hpp"
#include "kernels.hpp"

namespace dabs {

namespace {

// Far enough in the past that every bit starts eligible for any period.
constexpr std::int64_t kNeverFlipped = std::numeric_limits<std::int64_t>::min() / 4;
// Cutoff that makes every bit eligible.
constexpr std::int64_t kNoTabu = std::numeric_limits<std::int64_t>::max();

// Above this RandomMin draws every bit directly instead of skipping.
constexpr double kDenseBernoulli = 1.0 / 64.0;

double cube(double v) { return v * v * v; }

/// Tabu cutoff for this step, lifted when it would leave no candidate.
std::int64_t step_cutoff(const SearchState& state, std::uint64_t period) {
  const std::int64_t cutoff = state.tabu_cutoff(period);
  const std::size_t n = state.size();
  // Only the last `period` flips can be tabu, so some bit is eligible
  // whenever n exceeds that.
  if (static_cast<std::uint64_t>(n) > period) return cutoff;
  return kernels::count_eligible(state.last_flips().data(), cutoff, n) ? cutoff : kNoTabu;
}

/// Uniform random bit among the eligible ones.
std::size_t random_eligible(const SearchState& state, std::int64_t cutoff, Xorshift64& rng) {
  const std::size_t n = state.size();
  const auto* last = state.last_flips().data();
  const std::uint64_t count = kernels::count_eligible(last, cutoff, n);
  return kernels::kth_eligible_le(state.delta().data(), last, cutoff, kEnergyInfinity, uniform_below(rng, count), n);
}

}  // namespace

SearchState::SearchState(const QuboModel& model)
    : model_(&model),
      x_(model.size(), 0),
      delta_(model.diag()),
      best_x_(model.size(), 0),
      last_flip_(model.size(), kNeverFlipped) {}

void SearchState::flip(std::size_t i) {
  if (i >= x_.size()) throw DimensionError("flip: bit " + std::to_string(i) + " out of range");
  const std::uint8_t xi = x_[i];
  energy_ += delta_[i];
  // delta_k += W(i,k) sigma(x_i) sigma(x_k), evaluated before x_i changes.
  for (const auto& nb : model_->neighbors(i)) delta_[nb.bit] += (x_[nb.bit] == xi) ? nb.w : -nb.w;
  delta_[i] = -delta_[i];
  x_[i] = xi ^ 1;
  last_flip_[i] = static_cast<std::int64_t>(flip_count_);
  ++flip_count_;
  flip_digest_ = (flip_digest_ ^ static_cast<std::uint64_t>(i)) * 0x100000001B3ull;
}

void SearchState::record_best(std::size_t index, Energy e) {
  best_x_ = x_;
  best_x_[index] ^= 1;
  best_energy_ = e;
}

ScanResult SearchState::neighbor_scan() {
  const std::size_t n = delta_.size();
  if (n == 0) throw Error("neighbor_scan on an empty state");
  const Energy* d = delta_.data();
  const Energy m = kernels::min_all(d, n);
  const auto arg = static_cast<std::size_t>(std::find(d, d + n, m) - d);
  const Energy e = energy_ + m;
  if (e < best_energy_) record_best(arg, e);
  return {arg, e};
}

void SearchState::offer_min_delta(Energy min_delta) {
  const Energy e = energy_ + min_delta;
  if (e < best_energy_) {
    const Energy* d = delta_.data();
    const auto arg = static_cast<std::size_t>(std::find(d, d + delta_.size(), min_delta) - d);
    record_best(arg, e);
  }
}

void SearchState::update_best() {
  if (delta_.empty()) return;
  offer_min_delta(kernels::min_all(delta_.data(), delta_.size()));
}

std::uint64_t run_greedy(SearchState& state) {
  if (state.size() == 0) return 0;
  std::uint64_t flips = 0;
  for (;;) {
    const auto scan = state.neighbor_scan();
    if (state.delta()[scan.index] >= 0) break;
    state.flip(scan.index);
    ++flips;
  }
  return flips;
}

std::uint64_t run_straight(SearchState& state, const BitVector& target) {
  const std::size_t n = state.size();
  if (target.size() != n) throw DimensionError("run_straight: target length does not match model size");
  // Bits still to flip carry 0, finished ones kNoTabu; with cutoff 1 the
  // eligible argmin is the minimum-gain differing bit.
  std::vector<std::int64_t> pending(n, kNoTabu);
  std::uint64_t distance = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (state.x()[i] != target[i]) {
      pending[i] = 0;
      ++distance;
    }
  }
  for (std::uint64_t step = 0; step < distance; ++step) {
    state.update_best();
    const std::size_t arg = kernels::eligible_argmin(state.delta().data(), pending.data(), 1, 0, n);
    state.flip(arg);
    pending[arg] = kNoTabu;
  }
  return distance;
}

void run_maxmin(SearchState& state, const SearchParams& params, Xorshift64& rng) {
  const std::size_t n = state.size();
  if (n == 0) return;
  const std::uint64_t T = std::max<std::uint64_t>(params.iterations, 1);
  for (std::uint64_t t = 1; t <= T; ++t) {
    const std::int64_t cutoff = step_cutoff(state, params.tabu_period);
    const Energy* delta = state.delta().data();
    const std::int64_t* last = state.last_flips().data();
    const auto range = kernels::eligible_range(delta, last, cutoff, n);
    state.offer_min_delta(range.all_min);
    const Energy lo = range.lo;
    const Energy hi = range.hi;
    const double r = cube(static_cast<double>(T - t) / static_cast<double>(T));
    const double upper = (1.0 - r) * static_cast<double>(lo) + r * static_cast<double>(hi);
    const double d = static_cast<double>(lo) + uniform_unit(rng) * std::max(0.0, upper - static_cast<double>(lo));
    // Integer deltas: delta <= d  <=>  delta <= floor(d). Clamped so rounding
    // can never empty the candidate set.
    const Energy threshold = std::clamp(static_cast<Energy>(std::floor(d)), lo, hi);
    const std::uint64_t count = kernels::count_eligible_le(delta, last, cutoff, threshold, n);
    state.flip(kernels::kth_eligible_le(delta, last, cutoff, threshold, uniform_below(rng, count), n));
  }
}

void run_cyclicmin(SearchState& state, const SearchParams& params) {
  const std::size_t n = state.size();
  if (n == 0) return;
  const std::uint64_t T = std::max<std::uint64_t>(params.iterations, 1);
  const std::size_t floor_width = std::min<std::size_t>(std::max<std::uint64_t>(params.cyclic_min_width, 1), n);
  std::size_t cursor = 0;
  for (std::uint64_t t = 1; t <= T; ++t) {
    state.update_best();
    const double frac = cube(static_cast<double>(t) / static_cast<double>(T));
    auto width = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
    width = std::clamp(width, floor_width, n);

    // Window [cursor, cursor + width) on the circle, split into the wrapped
    // head [0, wrap) and the tail [cursor, tail_end). The head holds the
    // lower indices, so it wins ties.
    const std::size_t tail_end = std::min(cursor + width, n);
    const std::size_t wrap = cursor + width - tail_end;
    const Energy* delta = state.delta().data();
    const std::int64_t* last = state.last_flips().data();
    const auto pick = [&](std::int64_t cutoff) {
      const std::size_t head = kernels::eligible_argmin(delta, last, cutoff, 0, wrap);
      const std::size_t tail = kernels::eligible_argmin(delta, last, cutoff, cursor, tail_end);
      if (head == wrap) return tail == tail_end ? n : tail;
      if (tail == tail_end || delta[head] <= delta[tail]) return head;
      return tail;
    };
    std::size_t arg = pick(state.tabu_cutoff(params.tabu_period));
    if (arg == n) arg = pick(kNoTabu);
    state.flip(arg);
    cursor = (cursor + width) % n;
  }
}

void run_randommin(SearchState& state, const SearchParams& params, Xorshift64& rng) {
  const std::size_t n = state.size();
  if (n == 0) return;
  const std::uint64_t T = std::max<std::uint64_t>(params.iterations, 1);
  const double floor_p =
      params.random_min_prob_floor < 0 ? 32.0 / static_cast<double>(n) : params.random_min_prob_floor;
  std::vector<std::int64_t> draws(n);
  for (std::uint64_t t = 1; t <= T; ++t) {
    state.update_best();
    const std::int64_t cutoff = step_cutoff(state, params.tabu_period);
    const Energy* delta = state.delta().data();
    const std::int64_t* last = state.last_flips().data();
    const double p = std::min(1.0, std::max(cube(static_cast<double>(t) / static_cast<double>(T)), floor_p));
    std::size_t arg = n;
    if (p >= 1.0) {
      arg = kernels::eligible_argmin(delta, last, cutoff, 0, n);
    } else if (p >= kDenseBernoulli) {
      // Independent Bernoulli(p) per bit, two bits per 64-bit draw; each
      // 32-bit half is below thr with probability p to within 2^-32.
      const auto thr = static_cast<std::int64_t>(p * 4294967296.0);
      for (std::size_t i = 0; i < n; i += 2) {
        const std::uint64_t word = rng();
        draws[i] = static_cast<std::int64_t>(word & 0xFFFFFFFFu);
        if (i + 1 < n) draws[i + 1] = static_cast<std::int64_t>(word >> 32);
      }
      arg = kernels::sampled_argmin(delta, last, cutoff, draws.data(), thr, n);
    } else if (p > 0.0) {
      // Sparse regime: geometric gaps between successive selected bits.
      const double log_q = std::log1p(-p);
      Energy best = kEnergyInfinity;
      std::size_t i = 0;
      for (;;) {
        const double u = 1.0 - uniform_unit(rng);  // (0, 1]
        const double gap = std::floor(std::log(u) / log_q);
        if (gap >= static_cast<double>(n - i)) break;
        i += static_cast<std::size_t>(gap);
        if (last[i] < cutoff && delta[i] < best) {
          best = delta[i];
          arg = i;
        }
        if (++i >= n) break;
      }
    }
    if (arg == n) arg = random_eligible(state, cutoff, rng);
    state.flip(arg);
  }
}

void run_positivemin(SearchState& state, const SearchParams& params, Xorshift64& rng) {
  const std::size_t n = state.size();
  if (n == 0) return;
  const std::uint64_t T = std::max<std::uint64_t>(params.iterations, 1);
  for (std::uint64_t t = 1; t <= T; ++t) {
    const std::int64_t cutoff = step_cutoff(state, params.tabu_period);
    const Energy* delta = state.delta().data();
    const std::int64_t* last = state.last_flips().data();
    // Candidates are the eligible bits with delta <= posmin, i.e. every
    // non-positive delta plus the ties at the smallest positive value.
    const auto scan = kernels::eligible_positive_min(delta, last, cutoff, n);
    state.offer_min_delta(scan.all_min);
    const std::uint64_t count = kernels::count_eligible_le(delta, last, cutoff, scan.posmin, n);
    state.flip(kernels::kth_eligible_le(delta, last, cutoff, scan.posmin, uniform_below(rng, count), n));
  }
}

void run_twoneighbor(SearchState& state) {
  const std::size_t n = state.size();
  if (n == 0) return;
  state.update_best();
  state.flip(0);
  for (std::size_t k = 1; k < n; ++k) {
    state.update_best();
    state.flip(k);
    state.update_best();
    state.flip(k - 1);
  }
  state.update_best();
}

std::uint64_t run_main(MainAlgorithm algorithm, SearchState& state, const SearchParams& params,
                       Xorshift64& rng) {
  const std::uint64_t before = state.flip_count();
  switch (algorithm) {
    case MainAlgorithm::kMaxMin: run_maxmin(state, params, rng); break;
    case MainAlgorithm::kCyclicMin: run_cyclicmin(state, params); break;
    case MainAlgorithm::kRandomMin: run_randommin(state, params, rng); break;
    case MainAlgorithm::kPositiveMin: run_positivemin(state, params, rng); break;
    case MainAlgorithm::kTwoNeighbor: run_twoneighbor(state); break;
  }
  return state.flip_count() - before;
}

}  // namespace dabs
