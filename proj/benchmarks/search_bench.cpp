#include <benchmark/benchmark.h>

#include <set>

#include "dabs/engine.hpp"
#include "dabs/reductions.hpp"
#include "dabs/search.hpp"
#include "dabs/solver.hpp"

namespace {

using namespace dabs;

// QASP-style model on a random graph with `degree * n / 2` edges.
QuboModel sparse_model(std::size_t n, std::size_t degree, std::uint64_t seed) {
  Xorshift64 rng(seed);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<Edge> edges;
  const std::size_t m = std::min(degree * n / 2, n * (n - 1) / 2);
  while (edges.size() < m) {
    std::size_t u = uniform_below(rng, n), v = uniform_below(rng, n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.emplace(u, v).second) edges.push_back({u, v, 1});
  }
  return ising_to_qubo(gen_qasp(WeightedGraph(n, edges), 1, seed));
}

BitVector random_vector(std::size_t n, Xorshift64& rng) {
  BitVector x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1);
  return x;
}

void BM_Flip(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = sparse_model(n, static_cast<std::size_t>(st.range(1)), 1);
  SearchState s(m);
  Xorshift64 rng(2);
  for (auto _ : st) s.flip(uniform_below(rng, n));
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Flip)->Args({1024, 6})->Args({1024, 64})->Args({4096, 6});

void BM_NeighborScan(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = sparse_model(n, 6, 3);
  SearchState s(m);
  for (auto _ : st) benchmark::DoNotOptimize(s.neighbor_scan());
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_NeighborScan)->Arg(1024)->Arg(4096);

// Per-flip cost of one main search; items are flips.
void BM_MainSearch(benchmark::State& st) {
  const auto alg = static_cast<MainAlgorithm>(st.range(0));
  const auto n = static_cast<std::size_t>(st.range(1));
  const auto m = sparse_model(n, 6, 4);
  SearchState s(m);
  Xorshift64 rng(5);
  run_straight(s, random_vector(n, rng));
  BatchConfig cfg;
  const auto params = cfg.search_params(n);
  std::uint64_t flips = 0;
  for (auto _ : st) flips += run_main(alg, s, params, rng);
  st.SetItemsProcessed(static_cast<std::int64_t>(flips));
  st.SetLabel(std::string(to_string(alg)));
}
BENCHMARK(BM_MainSearch)->ArgsProduct({{0, 1, 2, 3, 4}, {1024}});

void BM_BatchSearch(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = sparse_model(n, 6, 6);
  SearchState s(m);
  Xorshift64 rng(7);
  BatchConfig cfg;
  std::uint64_t flips = 0;
  std::size_t k = 0;
  for (auto _ : st) {
    const Packet p{random_vector(n, rng), std::nullopt, kAllMainAlgorithms[k++ % kMainAlgorithmCount],
                   GeneticOp::kRandom};
    BatchStats stats;
    benchmark::DoNotOptimize(batch_search(s, p, cfg, rng, &stats));
    flips += stats.total_flips;
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(flips));
}
BENCHMARK(BM_BatchSearch)->Arg(1024)->Arg(4096);

// End-to-end flips per second of a short multi-threaded run.
void BM_Solve(benchmark::State& st) {
  const auto m = sparse_model(1024, 6, 8);
  RunConfig c;
  c.pools = static_cast<std::size_t>(st.range(0));
  c.workers_per_pool = static_cast<std::size_t>(st.range(1));
  c.limits.time_limit_seconds = 1e6;
  c.limits.max_flips = 5'000'000;
  std::uint64_t flips = 0;
  for (auto _ : st) flips += solve(m, c).total_flips;
  st.SetItemsProcessed(static_cast<std::int64_t>(flips));
}
BENCHMARK(BM_Solve)->Args({1, 1})->Args({4, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
