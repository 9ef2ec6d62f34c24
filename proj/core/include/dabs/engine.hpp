#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dabs/bounded_queue.hpp"
#include "dabs/search.hpp"

namespace dabs {

/// Controller <-> worker message. Outbound packets (controller to worker)
/// carry no energy; results carry the exact energy of `vector`. The two tags
/// pass through a worker untouched.
struct Packet {
  BitVector vector;
  std::optional<Energy> energy;
  MainAlgorithm algorithm = MainAlgorithm::kMaxMin;
  GeneticOp genop = GeneticOp::kRandom;
};

struct BatchConfig {
  double s = 0.1;  ///< search flip factor: main searches run ceil(s n) iterations
  double b = 1.0;  ///< batch flip factor: a batch stops once ceil(b n) flips are done
  std::uint64_t tabu_period = 8;
  std::uint64_t cyclic_min_width = 32;
  double random_min_prob_floor = -1.0;  ///< negative: 32 / n

  std::uint64_t iterations(std::size_t n) const;  ///< T
  std::uint64_t budget(std::size_t n) const;      ///< B
  SearchParams search_params(std::size_t n) const;
};

/// Flip accounting of one batch.
struct BatchStats {
  std::uint64_t straight_flips = 0;
  std::vector<std::uint64_t> greedy_flips;  ///< one entry per Greedy phase
  std::vector<std::uint64_t> main_flips;    ///< one entry per main-search round
  std::uint64_t total_flips = 0;

  std::size_t main_rounds() const noexcept { return main_flips.size(); }
};

/// Phase sequencing of a batch: Straight to the target, Greedy, then
/// [main; Greedy] rounds while fewer than `budget` flips have been spent. The
/// budget is checked only between rounds. TwoNeighbor runs exactly one round.
///
/// `phases` supplies straight(), greedy() and main(), each returning the
/// flips it performed, which lets tests script phase lengths.
template <class Phases>
BatchStats run_batch_schedule(Phases& phases, MainAlgorithm algorithm, std::uint64_t budget) {
  BatchStats stats;
  stats.straight_flips = phases.straight();
  stats.total_flips = stats.straight_flips;
  const auto greedy = [&] {
    const std::uint64_t f = phases.greedy();
    stats.greedy_flips.push_back(f);
    stats.total_flips += f;
  };
  greedy();
  const bool once = algorithm == MainAlgorithm::kTwoNeighbor;
  while (once ? stats.main_flips.empty() : stats.total_flips < budget) {
    const std::uint64_t f = phases.main();
    stats.main_flips.push_back(f);
    stats.total_flips += f;
    greedy();
  }
  return stats;
}

/// One batch on a worker's persistent state. Resets the best record, walks to
/// packet.vector, and returns the best vector found with its energy.
Packet batch_search(SearchState& state, const Packet& packet, const BatchConfig& config, Xorshift64& rng,
                    BatchStats* stats = nullptr);

struct StopRequest {};
using WorkerMessage = std::variant<Packet, StopRequest>;

struct BatchResult {
  Packet packet;
  BatchStats stats;
  std::uint64_t flip_digest = 0;  ///< worker's running flip-sequence hash after this batch
};

enum class WorkerStatus : int { kRunning, kStopped, kFailed };

/// The two queues joining one worker to its pool controller, plus the
/// worker's exit status.
class WorkerChannel {
 public:
  explicit WorkerChannel(Signal* controller_signal = nullptr, std::size_t capacity = 2)
      : inbound(capacity, controller_signal),
        outbound(capacity, controller_signal),
        signal_(controller_signal) {}

  BoundedQueue<WorkerMessage> inbound;
  BoundedQueue<BatchResult> outbound;

  /// Asks the worker to exit. Pending packets are abandoned.
  void request_stop();
  bool stop_requested() const noexcept { return stop_.load(std::memory_order_acquire); }

  WorkerStatus status() const noexcept { return status_.load(std::memory_order_acquire); }
  std::string error() const;
  void set_status(WorkerStatus s, std::string error = {});

 private:
  Signal* signal_;
  std::atomic<bool> stop_{false};
  std::atomic<WorkerStatus> status_{WorkerStatus::kRunning};
  mutable std::mutex error_mutex_;
  std::string error_;
};

/// Worker thread body: init state, then receive packet -> batch_search ->
/// send result until asked to stop. Never throws; failures land in the
/// channel status.
void worker_loop(WorkerChannel& channel, const QuboModel& model, const BatchConfig& config,
                 std::uint64_t seed);

}  // namespace dabs
