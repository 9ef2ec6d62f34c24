#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dabs/ga.hpp"
#include "dabs/model.hpp"

namespace dabs {

/// Optional restart of every pool once the islands have collapsed onto the
/// best solution and nothing has improved for a while.
struct RestartConfig {
  bool enabled = false;
  double stall_seconds = 10.0;
  std::size_t hamming_radius = 0;  ///< 0 selects n / 100
};

struct RunConfig {
  std::size_t pools = 1;
  std::size_t workers_per_pool = 1;
  BatchConfig batch;
  GaConfig ga;
  StopLimits limits;
  std::uint64_t seed = 1;
  RestartConfig restart;

  void validate() const;
  std::size_t threads() const noexcept { return pools * (workers_per_pool + 1); }
};

/// Shrinks workers_per_pool (then pools) so that threads() <= max_threads.
/// Returns true when the configuration changed.
bool cap_threads(RunConfig& config, std::size_t max_threads);

struct RunResult {
  Energy best_energy = kEnergyInfinity;  ///< +infinity when no batch finished
  Energy best_objective = kEnergyInfinity;
  BitVector solution;
  double time_to_best = 0.0;
  double elapsed = 0.0;
  std::uint64_t total_flips = 0;
  std::uint64_t batches = 0;
  DispatchCounts dispatched;
  std::optional<MainAlgorithm> first_best_algorithm;
  std::optional<GeneticOp> first_best_genop;
  StopReason reason = StopReason::kNone;
  std::vector<std::uint64_t> worker_flip_digests;  ///< pool-major order
  std::vector<std::string> worker_errors;

  bool found() const noexcept { return best_energy != kEnergyInfinity; }
  double flips_per_second() const noexcept { return elapsed > 0 ? static_cast<double>(total_flips) / elapsed : 0.0; }
  double frequency(MainAlgorithm a) const noexcept;
  double frequency(GeneticOp op) const noexcept;
};

/// Runs the island-model search on `model` until a stop limit fires.
/// Throws Error if every worker fails.
RunResult solve(const QuboModel& model, const RunConfig& config);

}  // namespace dabs
