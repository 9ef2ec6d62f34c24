#include "dabs/ga.hpp"

#include <algorithm>
#include <cmath>

#include "dabs/error.hpp"

namespace dabs {

namespace {

std::uint64_t hash_bits(const BitVector& x) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (auto b : x) h = (h ^ b) * 0x100000001B3ull;
  return h;
}

BitVector random_vector(std::size_t n, Xorshift64& rng) {
  BitVector x(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    x[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return x;
}

template <class Tag, std::size_t N>
Tag random_tag(const std::array<Tag, N>& all, Xorshift64& rng) {
  return all[uniform_below(rng, N)];
}

// A tag outside a non-empty allowed set is redrawn uniformly from that set.
template <class Tag>
Tag restrict_tag(Tag tag, const std::vector<Tag>& allowed, Xorshift64& rng) {
  if (allowed.empty() || std::find(allowed.begin(), allowed.end(), tag) != allowed.end()) return tag;
  return allowed[uniform_below(rng, allowed.size())];
}

}  // namespace

void GaConfig::validate() const {
  if (pool_capacity == 0) throw ConfigError("pool capacity must be positive");
  if (!(exploration >= 0.0 && exploration <= 1.0)) throw ConfigError("exploration rate must lie in [0, 1]");
  for (double p : {mutation_p, zero_p, one_p}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("genetic-operation probabilities must lie in [0, 1]");
  }
  if (!(interval_max_fraction > 0.0 && interval_max_fraction <= 1.0)) {
    throw ConfigError("interval_max_fraction must lie in (0, 1]");
  }
}

// ---- SolutionPool ------------------------------------------------------------

SolutionPool::SolutionPool(std::size_t n, std::size_t capacity, Xorshift64& rng) : n_(n), capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("pool capacity must be positive");
  reset(rng);
}

void SolutionPool::reset(Xorshift64& rng) {
  std::vector<Slot> fresh;
  fresh.reserve(capacity_);
  for (std::size_t k = 0; k < capacity_; ++k) {
    Packet p{random_vector(n_, rng), kEnergyInfinity, random_tag(kAllMainAlgorithms, rng),
             random_tag(kAllGeneticOps, rng)};
    const auto h = hash_bits(p.vector);
    fresh.push_back({std::move(p), next_seq_++, h});
  }
  std::lock_guard lock(mutex_);
  entries_ = std::move(fresh);
  real_ = 0;
}

bool SolutionPool::insert(Packet packet) {
  if (!packet.energy) throw Error("cannot insert a packet without energy");
  if (packet.vector.size() != n_) throw DimensionError("packet length does not match the pool");
  const Energy e = *packet.energy;
  if (!(e < *entries_.back().packet.energy)) return false;
  const std::uint64_t h = hash_bits(packet.vector);
  for (std::size_t k = 0; k < real_; ++k) {
    if (entries_[k].hash == h && entries_[k].packet.vector == packet.vector) return false;
  }
  Slot slot{std::move(packet), next_seq_++, h};
  // Equal energies keep insertion order: the new slot goes after them.
  const auto at = std::upper_bound(entries_.begin(), entries_.end() - 1, e,
                                   [](Energy v, const Slot& s) { return v < *s.packet.energy; }) -
                  entries_.begin();
  std::lock_guard lock(mutex_);
  const bool evicted_real = real_ == entries_.size();
  entries_.pop_back();
  entries_.insert(entries_.begin() + at, std::move(slot));
  if (!evicted_real) ++real_;
  return true;
}

std::vector<Packet> SolutionPool::snapshot() const {
  std::lock_guard lock(mutex_);
  std::vector<Packet> out;
  out.reserve(entries_.size());
  for (const auto& s : entries_) out.push_back(s.packet);
  return out;
}

std::optional<BitVector> SolutionPool::sample_rank_biased(Xorshift64& rng) const {
  std::lock_guard lock(mutex_);
  if (real_ == 0) return std::nullopt;
  return entries_[rank_biased_index(uniform_unit(rng), real_)].packet.vector;
}

// ---- Selection ---------------------------------------------------------------

std::size_t rank_biased_index(double r, std::size_t m) noexcept {
  if (m == 0) return 0;
  const auto k = static_cast<std::size_t>(std::floor(r * r * r * static_cast<double>(m)));
  return std::min(k, m - 1);
}

const Packet* select_rank_biased(const SolutionPool& pool, Xorshift64& rng) {
  if (pool.real_count() == 0) return nullptr;
  return &pool.entry(rank_biased_index(uniform_unit(rng), pool.real_count()));
}

GeneticOp choose_genop(const SolutionPool& pool, Xorshift64& rng, double exploration) {
  if (bernoulli(rng, exploration) || pool.size() == 0) return random_tag(kAllGeneticOps, rng);
  return pool.entry(uniform_below(rng, pool.size())).genop;
}

MainAlgorithm choose_algorithm(const SolutionPool& pool, Xorshift64& rng, double exploration) {
  if (bernoulli(rng, exploration) || pool.size() == 0) return random_tag(kAllMainAlgorithms, rng);
  return pool.entry(uniform_below(rng, pool.size())).algorithm;
}

// ---- Genetic operations --------------------------------------------------------

void zero_interval(BitVector& x, std::size_t start, std::size_t length) {
  const std::size_t n = x.size();
  if (n == 0) return;
  length = std::min(length, n);
  for (std::size_t k = 0; k < length; ++k) x[(start + k) % n] = 0;
}

namespace {

BitVector crossover(const BitVector& a, const BitVector& b, Xorshift64& rng) {
  BitVector out(a.size());
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i % 64 == 0) word = rng();
    out[i] = ((word >> (i % 64)) & 1) ? a[i] : b[i];
  }
  return out;
}

}  // namespace

GenopOutput apply_genop(GeneticOp op, const SolutionPool& pool, const SolutionPool* neighbor, Xorshift64& rng,
                        const GaConfig& cfg) {
  const std::size_t n = pool.bits();
  if (op == GeneticOp::kRandom || pool.real_count() == 0) return {random_vector(n, rng), GeneticOp::kRandom};

  switch (op) {
    case GeneticOp::kBest:
      return {pool.entry(0).vector, op};

    case GeneticOp::kMutation: {
      BitVector x = select_rank_biased(pool, rng)->vector;
      for (auto& b : x) {
        if (bernoulli(rng, cfg.mutation_p)) b ^= 1;
      }
      return {std::move(x), op};
    }

    case GeneticOp::kZero:
    case GeneticOp::kOne: {
      BitVector x = select_rank_biased(pool, rng)->vector;
      const bool one = op == GeneticOp::kOne;
      const double p = one ? cfg.one_p : cfg.zero_p;
      for (auto& b : x) {
        if (bernoulli(rng, p)) b = one ? 1 : 0;
      }
      return {std::move(x), op};
    }

    case GeneticOp::kIntervalZero: {
      BitVector x = select_rank_biased(pool, rng)->vector;
      const std::size_t lo = std::min(cfg.interval_min, n);
      const auto upper = static_cast<std::size_t>(std::floor(static_cast<double>(n) * cfg.interval_max_fraction));
      const std::size_t hi = std::max(lo, upper);
      const auto length = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(lo),
                                                               static_cast<std::int64_t>(hi)));
      const std::size_t start = n == 0 ? 0 : uniform_below(rng, n);
      zero_interval(x, start, length);
      return {std::move(x), op};
    }

    case GeneticOp::kXrossover: {
      if (neighbor != nullptr && neighbor != &pool) {
        const BitVector& mine = select_rank_biased(pool, rng)->vector;
        if (auto theirs = neighbor->sample_rank_biased(rng)) return {crossover(mine, *theirs, rng), op};
      }
      [[fallthrough]];
    }
    case GeneticOp::kCrossover: {
      const BitVector& a = select_rank_biased(pool, rng)->vector;
      const BitVector& b = select_rank_biased(pool, rng)->vector;
      return {crossover(a, b, rng), GeneticOp::kCrossover};
    }

    case GeneticOp::kRandom:
      break;
  }
  return {random_vector(n, rng), GeneticOp::kRandom};
}

// ---- RunCoordinator ------------------------------------------------------------

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::kNone: return "none";
    case StopReason::kTarget: return "target";
    case StopReason::kTimeLimit: return "time_limit";
    case StopReason::kMaxBatches: return "max_batches";
    case StopReason::kMaxFlips: return "max_flips";
    case StopReason::kWorkersFailed: return "workers_failed";
  }
  return "?";
}

RunCoordinator::RunCoordinator(StopLimits limits) : limits_(std::move(limits)), start_(Clock::now()) {
  const double secs = std::max(0.0, limits_.time_limit_seconds);
  deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(secs));
}

double RunCoordinator::elapsed() const {
  return std::chrono::duration<double>(Clock::now() - start_).count();
}

void RunCoordinator::request_stop(StopReason reason) {
  {
    std::lock_guard lock(mutex_);
    if (reason_ == StopReason::kNone) reason_ = reason;
  }
  stop_.store(true, std::memory_order_release);
  wake_all();
}

StopReason RunCoordinator::reason() const {
  std::lock_guard lock(mutex_);
  return reason_;
}

bool RunCoordinator::report(const Packet& packet, std::uint64_t flips) {
  const std::uint64_t total_flips = flips_.fetch_add(flips, std::memory_order_relaxed) + flips;
  const std::uint64_t total_batches = batches_.fetch_add(1, std::memory_order_relaxed) + 1;
  bool improved = false;
  bool reached = false;
  if (packet.energy) {
    std::lock_guard lock(mutex_);
    if (*packet.energy < best_.energy) {
      best_.energy = *packet.energy;
      best_.vector = packet.vector;
      best_.seconds = elapsed();
      best_.algorithm = packet.algorithm;
      best_.genop = packet.genop;
      last_improvement_ = best_.seconds;
      improved = true;
    }
    reached = limits_.target_energy && best_.energy <= *limits_.target_energy;
  }
  if (reached) request_stop(StopReason::kTarget);
  if (limits_.max_batches && total_batches >= *limits_.max_batches) request_stop(StopReason::kMaxBatches);
  if (limits_.max_flips && total_flips >= *limits_.max_flips) request_stop(StopReason::kMaxFlips);
  return improved;
}

BestRecord RunCoordinator::best() const {
  std::lock_guard lock(mutex_);
  return best_;
}

double RunCoordinator::last_improvement() const {
  std::lock_guard lock(mutex_);
  return last_improvement_;
}

void RunCoordinator::add_signal(Signal* s) {
  std::lock_guard lock(mutex_);
  signals_.push_back(s);
}

void RunCoordinator::worker_failed(std::string message) {
  {
    std::lock_guard lock(mutex_);
    worker_errors_.push_back(std::move(message));
  }
  if (live_workers_.fetch_sub(1) == 1) request_stop(StopReason::kWorkersFailed);
}

std::vector<std::string> RunCoordinator::worker_errors() const {
  std::lock_guard lock(mutex_);
  return worker_errors_;
}

void RunCoordinator::wake_all() {
  std::vector<Signal*> copy;
  {
    std::lock_guard lock(mutex_);
    copy = signals_;
  }
  for (auto* s : copy) s->notify();
}

// ---- DispatchCounts ----------------------------------------------------------

std::uint64_t DispatchCounts::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : genop) t += c;
  return t;
}

DispatchCounts& DispatchCounts::operator+=(const DispatchCounts& o) noexcept {
  for (std::size_t k = 0; k < algorithm.size(); ++k) algorithm[k] += o.algorithm[k];
  for (std::size_t k = 0; k < genop.size(); ++k) genop[k] += o.genop[k];
  return *this;
}

// ---- PoolController ------------------------------------------------------------

PoolController::PoolController(std::size_t index, std::vector<std::shared_ptr<SolutionPool>> ring,
                               std::vector<std::shared_ptr<WorkerChannel>> workers, Signal& signal,
                               RunCoordinator& coordinator, GaConfig config, std::uint64_t seed)
    : index_(index),
      ring_(std::move(ring)),
      workers_(std::move(workers)),
      alive_(workers_.size(), true),
      signal_(signal),
      coordinator_(coordinator),
      config_(config),
      rng_(seed),
      digests_(workers_.size(), 0),
      seen_epoch_(coordinator.restart_epoch()) {
  if (index_ >= ring_.size()) throw ConfigError("pool index outside the ring");
  config_.validate();
}

Packet PoolController::make_packet() {
  const SolutionPool& own = *ring_[index_];
  const SolutionPool* next = ring_.size() > 1 ? ring_[(index_ + 1) % ring_.size()].get() : nullptr;
  GeneticOp requested = choose_genop(own, rng_, config_.exploration);
  MainAlgorithm algorithm = choose_algorithm(own, rng_, config_.exploration);
  requested = restrict_tag(requested, config_.genops, rng_);
  algorithm = restrict_tag(algorithm, config_.algorithms, rng_);
  auto out = apply_genop(requested, own, next, rng_, config_);
  return Packet{std::move(out.vector), std::nullopt, algorithm, out.applied};
}

void PoolController::dispatch(std::size_t worker) {
  Packet p = make_packet();
  const auto alg = p.algorithm;
  const auto op = p.genop;
  if (workers_[worker]->inbound.try_push(WorkerMessage{std::move(p)})) {
    ++counts_.algorithm[static_cast<std::size_t>(alg)];
    ++counts_.genop[static_cast<std::size_t>(op)];
  }
}

void PoolController::handle_result(std::size_t worker, BatchResult result) {
  digests_[worker] = result.flip_digest;
  coordinator_.report(result.packet, result.stats.total_flips);
  pool().insert(std::move(result.packet));
  if (!coordinator_.stopped()) dispatch(worker);
}

void PoolController::run() {
  using Clock = RunCoordinator::Clock;
  if (Clock::now() >= coordinator_.deadline()) coordinator_.request_stop(StopReason::kTimeLimit);

  if (!coordinator_.stopped()) {
    for (std::size_t w = 0; w < workers_.size(); ++w) {
      const std::size_t fill = workers_[w]->inbound.capacity();
      for (std::size_t k = 0; k < fill; ++k) dispatch(w);
    }
  }

  while (!coordinator_.stopped()) {
    const std::uint64_t generation = signal_.generation();

    if (coordinator_.restart_epoch() != seen_epoch_) {
      seen_epoch_ = coordinator_.restart_epoch();
      pool().reset(rng_);
    }

    bool progressed = false;
    std::size_t live = 0;
    for (std::size_t w = 0; w < workers_.size() && !coordinator_.stopped(); ++w) {
      if (!alive_[w]) continue;
      while (auto result = workers_[w]->outbound.try_pop()) {
        handle_result(w, std::move(*result));
        progressed = true;
        if (coordinator_.stopped()) break;
      }
      if (workers_[w]->status() == WorkerStatus::kFailed) {
        alive_[w] = false;
        coordinator_.worker_failed("pool " + std::to_string(index_) + " worker " + std::to_string(w) + ": " +
                                   workers_[w]->error());
        continue;
      }
      ++live;
    }
    if (coordinator_.stopped()) break;
    if (live == 0) break;

    const auto now = Clock::now();
    if (now >= coordinator_.deadline()) {
      coordinator_.request_stop(StopReason::kTimeLimit);
      break;
    }
    if (!progressed) {
      signal_.wait_until(generation, std::min(coordinator_.deadline(), now + std::chrono::milliseconds(100)));
    }
  }

  for (auto& w : workers_) w->request_stop();
}

}  // namespace dabs
