#include "dabs/engine.hpp"

#include <cmath>
#include <exception>

#include "dabs/error.hpp"

namespace dabs {

namespace {

std::uint64_t flips_for(double factor, std::size_t n) {
  // The epsilon keeps products such as 0.6 * 1000 from rounding up to 601.
  const double v = std::ceil(factor * static_cast<double>(n) - 1e-9);
  return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

class StatePhases {
 public:
  StatePhases(SearchState& state, const BitVector& target, MainAlgorithm algorithm, const SearchParams& params,
              Xorshift64& rng)
      : state_(state), target_(target), algorithm_(algorithm), params_(params), rng_(rng) {}

  std::uint64_t straight() { return run_straight(state_, target_); }
  std::uint64_t greedy() { return run_greedy(state_); }
  std::uint64_t main() { return run_main(algorithm_, state_, params_, rng_); }

 private:
  SearchState& state_;
  const BitVector& target_;
  MainAlgorithm algorithm_;
  const SearchParams& params_;
  Xorshift64& rng_;
};

}  // namespace

std::uint64_t BatchConfig::iterations(std::size_t n) const { return flips_for(s, n); }

std::uint64_t BatchConfig::budget(std::size_t n) const { return flips_for(b, n); }

SearchParams BatchConfig::search_params(std::size_t n) const {
  SearchParams p;
  p.iterations = iterations(n);
  p.tabu_period = tabu_period;
  p.cyclic_min_width = cyclic_min_width;
  p.random_min_prob_floor = random_min_prob_floor;
  return p;
}

Packet batch_search(SearchState& state, const Packet& packet, const BatchConfig& config, Xorshift64& rng,
                    BatchStats* stats) {
  const std::size_t n = state.size();
  if (packet.vector.size() != n) {
    throw DimensionError("packet vector has " + std::to_string(packet.vector.size()) + " bits, model has " +
                         std::to_string(n));
  }
  Packet out{packet.vector, Energy{0}, packet.algorithm, packet.genop};
  if (n == 0) {
    if (stats) *stats = {};
    return out;
  }
  if (!(config.s > 0.0) || !(config.b > 0.0)) throw ConfigError("flip factors s and b must be positive");

  state.reset_best();
  const SearchParams params = config.search_params(n);
  StatePhases phases(state, packet.vector, packet.algorithm, params, rng);
  BatchStats local = run_batch_schedule(phases, packet.algorithm, config.budget(n));
  if (stats) *stats = std::move(local);

  out.vector = state.best_x();
  out.energy = state.best_energy();
  return out;
}

void WorkerChannel::request_stop() {
  stop_.store(true, std::memory_order_release);
  inbound.push_front(StopRequest{});
  // A worker blocked on a full outbound queue must see the stop too.
  outbound.close();
}

std::string WorkerChannel::error() const {
  std::lock_guard lock(error_mutex_);
  return error_;
}

void WorkerChannel::set_status(WorkerStatus s, std::string error) {
  {
    std::lock_guard lock(error_mutex_);
    error_ = std::move(error);
  }
  status_.store(s, std::memory_order_release);
  if (signal_) signal_->notify();
}

void worker_loop(WorkerChannel& channel, const QuboModel& model, const BatchConfig& config,
                 std::uint64_t seed) {
  try {
    SearchState state(model);
    Xorshift64 rng(seed);
    for (;;) {
      auto message = channel.inbound.pop();
      if (!message) {
        if (channel.stop_requested()) break;
        throw Error("inbound queue closed without a stop request");
      }
      if (std::holds_alternative<StopRequest>(*message)) break;

      BatchResult result;
      result.packet = batch_search(state, std::get<Packet>(*message), config, rng, &result.stats);
      result.flip_digest = state.flip_digest();
      if (!channel.outbound.push(std::move(result))) {
        if (channel.stop_requested()) break;
        throw Error("outbound queue closed without a stop request");
      }
    }
    channel.set_status(WorkerStatus::kStopped);
  } catch (const std::exception& e) {
    channel.set_status(WorkerStatus::kFailed, e.what());
  } catch (...) {
    channel.set_status(WorkerStatus::kFailed, "unknown error");
  }
}

}  // namespace dabs
