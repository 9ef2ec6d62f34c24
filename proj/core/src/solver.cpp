#include "dabs/solver.hpp"

#include <algorithm>
#include <memory>
#include <thread>

#include "dabs/error.hpp"

namespace dabs {

namespace {

constexpr std::uint64_t kPoolStream = 0x706F6F6C;
constexpr std::uint64_t kControllerStream = 0x63746C72;
constexpr std::uint64_t kWorkerStream = 0x776F726B;

bool pools_collapsed(const std::vector<std::shared_ptr<SolutionPool>>& pools, const BitVector& best,
                     std::size_t radius) {
  for (const auto& pool : pools) {
    for (const auto& p : pool->snapshot()) {
      if (p.energy && *p.energy != kEnergyInfinity && hamming_distance(p.vector, best) > radius) return false;
    }
  }
  return true;
}

}  // namespace

void RunConfig::validate() const {
  if (pools < 1) throw ConfigError("pools must be >= 1");
  if (workers_per_pool < 1) throw ConfigError("workers per pool must be >= 1");
  if (!(batch.s > 0.0) || !(batch.b > 0.0)) throw ConfigError("flip factors s and b must be positive");
  if (limits.time_limit_seconds < 0.0) throw ConfigError("time limit must be non-negative");
  if (restart.enabled && !(restart.stall_seconds > 0.0)) throw ConfigError("restart stall time must be positive");
  ga.validate();
}

bool cap_threads(RunConfig& config, std::size_t max_threads) {
  if (max_threads == 0 || config.threads() <= max_threads) return false;
  const std::size_t per_pool = max_threads / config.pools;
  config.workers_per_pool = std::max<std::size_t>(1, per_pool > 1 ? per_pool - 1 : 1);
  if (config.threads() > max_threads) {
    config.workers_per_pool = 1;
    config.pools = std::max<std::size_t>(1, max_threads / 2);
  }
  return true;
}

double RunResult::frequency(MainAlgorithm a) const noexcept {
  const auto total = dispatched.total();
  return total ? static_cast<double>(dispatched.algorithm[static_cast<std::size_t>(a)]) / static_cast<double>(total)
               : 0.0;
}

double RunResult::frequency(GeneticOp op) const noexcept {
  const auto total = dispatched.total();
  return total ? static_cast<double>(dispatched.genop[static_cast<std::size_t>(op)]) / static_cast<double>(total)
               : 0.0;
}

RunResult solve(const QuboModel& model, const RunConfig& config) {
  config.validate();
  const std::size_t n = model.size();
  RunResult result;

  if (n == 0) {
    result.best_energy = 0;
    result.best_objective = model.offset();
    result.reason = StopReason::kTarget;
    return result;
  }

  RunCoordinator coordinator(config.limits);
  Signal monitor_signal;
  coordinator.add_signal(&monitor_signal);

  const std::size_t P = config.pools;
  const std::size_t W = config.workers_per_pool;

  std::vector<std::shared_ptr<SolutionPool>> ring;
  for (std::size_t p = 0; p < P; ++p) {
    Xorshift64 rng(derive_seed(config.seed, p, kPoolStream));
    ring.push_back(std::make_shared<SolutionPool>(n, config.ga.pool_capacity, rng));
  }

  std::vector<std::unique_ptr<Signal>> signals;
  std::vector<std::vector<std::shared_ptr<WorkerChannel>>> channels(P);
  std::vector<std::unique_ptr<PoolController>> controllers;
  for (std::size_t p = 0; p < P; ++p) {
    signals.push_back(std::make_unique<Signal>());
    coordinator.add_signal(signals.back().get());
    for (std::size_t w = 0; w < W; ++w) channels[p].push_back(std::make_shared<WorkerChannel>(signals.back().get()));
    controllers.push_back(std::make_unique<PoolController>(p, ring, channels[p], *signals.back(), coordinator,
                                                           config.ga,
                                                           derive_seed(config.seed, p, kControllerStream)));
  }
  coordinator.set_live_workers(P * W);

  {
    std::vector<std::jthread> workers;
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t w = 0; w < W; ++w) {
        const std::uint64_t seed = derive_seed(config.seed, p * W + w, kWorkerStream);
        workers.emplace_back(worker_loop, std::ref(*channels[p][w]), std::cref(model), std::cref(config.batch),
                             seed);
      }
    }
    std::vector<std::jthread> pool_threads;
    for (auto& c : controllers) pool_threads.emplace_back([&c] { c->run(); });

    const std::size_t radius = config.restart.hamming_radius ? config.restart.hamming_radius : n / 100;
    double last_restart = 0.0;
    while (!coordinator.stopped()) {
      const auto generation = monitor_signal.generation();
      const auto now = RunCoordinator::Clock::now();
      if (now >= coordinator.deadline()) {
        coordinator.request_stop(StopReason::kTimeLimit);
        break;
      }
      if (config.restart.enabled) {
        const double t = coordinator.elapsed();
        const double quiet_since = std::max(coordinator.last_improvement(), last_restart);
        const auto best = coordinator.best();
        if (best.energy != kEnergyInfinity && t - quiet_since >= config.restart.stall_seconds &&
            pools_collapsed(ring, best.vector, radius)) {
          coordinator.request_restart();
          last_restart = t;
        }
      }
      monitor_signal.wait_until(generation,
                                std::min(coordinator.deadline(), now + std::chrono::milliseconds(100)));
    }
    // Controllers stop their workers on exit; the jthreads join here.
  }

  const BestRecord best = coordinator.best();
  result.reason = coordinator.reason();
  result.elapsed = coordinator.elapsed();
  result.total_flips = coordinator.total_flips();
  result.batches = coordinator.batches();
  result.worker_errors = coordinator.worker_errors();
  for (const auto& c : controllers) {
    result.dispatched += c->dispatched();
    const auto& d = c->worker_digests();
    result.worker_flip_digests.insert(result.worker_flip_digests.end(), d.begin(), d.end());
  }
  if (best.energy != kEnergyInfinity) {
    result.best_energy = best.energy;
    result.best_objective = best.energy + model.offset();
    result.solution = best.vector;
    result.time_to_best = best.seconds;
    result.first_best_algorithm = best.algorithm;
    result.first_best_genop = best.genop;
  }
  if (result.reason == StopReason::kWorkersFailed) {
    std::string msg = "all workers failed";
    if (!result.worker_errors.empty()) msg += ": " + result.worker_errors.front();
    throw Error(msg);
  }
  return result;
}

}  // namespace dabs
