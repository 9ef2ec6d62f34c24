#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dabs/engine.hpp"

namespace dabs {

struct GaConfig {
  std::size_t pool_capacity = 100;
  double exploration = 0.05;  ///< epsilon: chance of a uniform tag instead of a pool row's tag
  double mutation_p = 0.125;
  double zero_p = 0.125;
  double one_p = 0.125;
  std::size_t interval_min = 32;
  double interval_max_fraction = 0.5;
  /// Restrict the tags a controller may dispatch (ablation runs); empty allows all.
  std::vector<MainAlgorithm> algorithms;
  std::vector<GeneticOp> genops;

  void validate() const;
};

/// Fixed-capacity pool of packets sorted by (energy, insertion order).
///
/// Starts full of random vectors with +infinity energy and random tags.
/// Mutated only by the owning controller thread; other threads may read
/// through snapshot() and sample_rank_biased(), which lock.
class SolutionPool {
 public:
  SolutionPool(std::size_t n, std::size_t capacity, Xorshift64& rng);

  /// Refill with fresh +infinity sentinels.
  void reset(Xorshift64& rng);

  /// Inserts when the energy beats the worst entry and no real entry holds
  /// the same vector; the worst entry is evicted.
  bool insert(Packet packet);

  std::size_t bits() const noexcept { return n_; }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Number of entries with a finite energy; they form a prefix.
  std::size_t real_count() const noexcept { return real_; }
  const Packet& entry(std::size_t rank) const { return entries_[rank].packet; }
  Energy best_energy() const noexcept { return entries_.empty() ? kEnergyInfinity : *entries_.front().packet.energy; }

  std::vector<Packet> snapshot() const;
  /// Thread-safe rank-biased draw from the real entries; nullopt if none.
  std::optional<BitVector> sample_rank_biased(Xorshift64& rng) const;

 private:
  struct Slot {
    Packet packet;
    std::uint64_t seq;
    std::uint64_t hash;
  };

  std::size_t n_;
  std::size_t capacity_;
  std::vector<Slot> entries_;
  std::size_t real_ = 0;
  std::uint64_t next_seq_ = 0;
  mutable std::mutex mutex_;
};

/// 0-based rank floor(r^3 m) for r in [0, 1).
std::size_t rank_biased_index(double r, std::size_t m) noexcept;

/// Rank-biased pick among the real entries; nullptr when there are none.
const Packet* select_rank_biased(const SolutionPool& pool, Xorshift64& rng);

GeneticOp choose_genop(const SolutionPool& pool, Xorshift64& rng, double exploration);
MainAlgorithm choose_algorithm(const SolutionPool& pool, Xorshift64& rng, double exploration);

struct GenopOutput {
  BitVector vector;
  GeneticOp applied;  ///< differs from the request when the op had to degrade
};

/// Builds a target vector. Ops that need a parent fall back to Random while
/// the pool holds no real entry; Xrossover falls back to Crossover without a
/// neighbour pool (or when the neighbour has no real entry yet).
GenopOutput apply_genop(GeneticOp op, const SolutionPool& pool, const SolutionPool* neighbor, Xorshift64& rng,
                        const GaConfig& cfg);

/// Cyclic-window zeroing used by IntervalZero, exposed for tests.
void zero_interval(BitVector& x, std::size_t start, std::size_t length);

// ---- Run coordination ------------------------------------------------------

enum class StopReason { kNone, kTarget, kTimeLimit, kMaxBatches, kMaxFlips, kWorkersFailed };
std::string_view to_string(StopReason r) noexcept;

struct StopLimits {
  double time_limit_seconds = 10.0;
  std::optional<Energy> target_energy;
  std::optional<std::uint64_t> max_batches;
  std::optional<std::uint64_t> max_flips;
};

struct BestRecord {
  BitVector vector;
  Energy energy = kEnergyInfinity;
  double seconds = 0.0;
  MainAlgorithm algorithm = MainAlgorithm::kMaxMin;
  GeneticOp genop = GeneticOp::kRandom;
};

/// State shared by every controller of one run: stop flag, limits, the global
/// best, and global counters.
class RunCoordinator {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RunCoordinator(StopLimits limits);

  const StopLimits& limits() const noexcept { return limits_; }
  Clock::time_point start() const noexcept { return start_; }
  Clock::time_point deadline() const noexcept { return deadline_; }
  double elapsed() const;

  bool stopped() const noexcept { return stop_.load(std::memory_order_acquire); }
  /// First caller's reason wins.
  void request_stop(StopReason reason);
  StopReason reason() const;

  /// Accounts one finished batch and offers its packet as a global best.
  /// Returns true if the packet improved the global best.
  bool report(const Packet& packet, std::uint64_t flips);

  BestRecord best() const;
  double last_improvement() const;
  std::uint64_t total_flips() const noexcept { return flips_.load(std::memory_order_relaxed); }
  std::uint64_t batches() const noexcept { return batches_.load(std::memory_order_relaxed); }

  /// Restart generation; controllers reset their pools when it changes.
  std::uint64_t restart_epoch() const noexcept { return restart_.load(std::memory_order_acquire); }
  void request_restart() noexcept { restart_.fetch_add(1, std::memory_order_acq_rel); }

  void add_signal(Signal* s);
  void worker_failed(std::string message);
  void set_live_workers(std::size_t n) { live_workers_.store(n); }
  std::vector<std::string> worker_errors() const;

 private:
  void wake_all();

  StopLimits limits_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> flips_{0};
  std::atomic<std::uint64_t> batches_{0};
  std::atomic<std::uint64_t> restart_{0};
  std::atomic<std::size_t> live_workers_{0};
  mutable std::mutex mutex_;
  StopReason reason_ = StopReason::kNone;
  BestRecord best_;
  double last_improvement_ = 0.0;
  std::vector<Signal*> signals_;
  std::vector<std::string> worker_errors_;
};

/// Dispatch counts of one controller (merged across controllers at the end).
struct DispatchCounts {
  std::array<std::uint64_t, kMainAlgorithmCount> algorithm{};
  std::array<std::uint64_t, kGeneticOpCount> genop{};

  std::uint64_t total() const noexcept;
  DispatchCounts& operator+=(const DispatchCounts& o) noexcept;
};

/// GA loop of one island: keeps its pool, feeds its workers, and inserts
/// their results until the coordinator stops the run.
class PoolController {
 public:
  /// `ring` holds every pool of the run; this controller owns ring[index] and
  /// samples ring[(index + 1) % ring.size()] for Xrossover.
  PoolController(std::size_t index, std::vector<std::shared_ptr<SolutionPool>> ring,
                 std::vector<std::shared_ptr<WorkerChannel>> workers, Signal& signal, RunCoordinator& coordinator,
                 GaConfig config, std::uint64_t seed);

  void run();

  const DispatchCounts& dispatched() const noexcept { return counts_; }
  /// Flip-sequence digest carried by each worker's most recent reported batch.
  const std::vector<std::uint64_t>& worker_digests() const noexcept { return digests_; }
  SolutionPool& pool() { return *ring_[index_]; }

  /// Next target packet, with both tags chosen adaptively.
  Packet make_packet();

 private:
  void handle_result(std::size_t worker, BatchResult result);
  void dispatch(std::size_t worker);

  std::size_t index_;
  std::vector<std::shared_ptr<SolutionPool>> ring_;
  std::vector<std::shared_ptr<WorkerChannel>> workers_;
  std::vector<bool> alive_;
  Signal& signal_;
  RunCoordinator& coordinator_;
  GaConfig config_;
  Xorshift64 rng_;
  DispatchCounts counts_;
  std::vector<std::uint64_t> digests_;
  std::uint64_t seen_epoch_ = 0;
};

}  // namespace dabs
