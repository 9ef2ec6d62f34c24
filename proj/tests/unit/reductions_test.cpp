#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "dabs/error.hpp"
#include "dabs/reductions.hpp"
#include "oracle.hpp"

namespace dabs {
namespace {

using testing::bits_of;

WeightedGraph random_graph(std::size_t n, double density, Energy lo, Energy hi, Xorshift64& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (bernoulli(rng, density)) edges.push_back({u, v, uniform_int(rng, lo, hi)});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

QapInstance random_qap(std::size_t n, Energy max_value, Xorshift64& rng) {
  QapInstance q;
  q.n = n;
  q.flow.assign(n * n, 0);
  q.dist.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      q.flow[i * n + k] = uniform_int(rng, 0, max_value);
      q.dist[i * n + k] = uniform_int(rng, 0, max_value);
    }
  }
  return q;
}

BitVector one_hot(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  BitVector x(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i * n + perm[i]] = 1;
  return x;
}

TEST(MaxCut, SingleEdge) {
  const WeightedGraph g(2, {{0, 1, 1}});
  const auto q = maxcut_to_qubo(g);
  EXPECT_EQ(q, QuboModel(2, {{0, 1, 2}}, {-1, -1}));
  EXPECT_EQ(energy_of(q, {1, 0}), -1);
  const auto cut = decode_cut(g, {1, 0});
  EXPECT_EQ(cut.side, std::vector<std::size_t>{0});
  EXPECT_EQ(cut.value, 1);
}

TEST(MaxCut, EnergyIsMinusCutExhaustively) {
  Xorshift64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 9);
    const auto g = random_graph(n, 0.5, -3, 5, rng);
    const auto q = maxcut_to_qubo(g);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto x = bits_of(n, mask);
      ASSERT_EQ(energy_of(q, x), -decode_cut(g, x).value);
    }
  }
}

TEST(MaxCut, EmptyGraph) {
  const auto q = maxcut_to_qubo(WeightedGraph(5, {}));
  EXPECT_EQ(q.size(), 5u);
  EXPECT_TRUE(q.off_diag().empty());
  EXPECT_TRUE(std::all_of(q.diag().begin(), q.diag().end(), [](Energy d) { return d == 0; }));
}

TEST(Gset, ParseAndWrite) {
  const auto g = parse_gset("4 3\n1 2 1\n4 2 -1\n3 4\n");
  ASSERT_EQ(g.size(), 4u);
  ASSERT_EQ(g.edges().size(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 3, -1}));
  EXPECT_EQ(g.edges()[2], (Edge{2, 3, 1}));
  EXPECT_EQ(parse_gset(write_gset(g)), g);
}

TEST(Gset, Errors) {
  EXPECT_THROW(parse_gset(""), ParseError);
  EXPECT_THROW(parse_gset("3 1\n1 4 1\n"), ParseError);
  EXPECT_THROW(parse_gset("3 1\n2 2 1\n"), ParseError);
  EXPECT_THROW(parse_gset("3 2\n1 2 1\n"), ParseError);
  EXPECT_THROW(parse_gset("3 2\n1 2 1\n2 1 1\n"), ParseError);
  EXPECT_THROW(parse_gset("3 1\n1 2 x\n"), ParseError);
  EXPECT_THROW(WeightedGraph(2, {{0, 0, 1}}), DimensionError);
}

TEST(Qap, TwoFacilityExample) {
  QapInstance q{2, {0, 3, 3, 0}, {0, 2, 2, 0}};
  const auto m = qap_to_qubo(q, 100);
  EXPECT_EQ(m.offset(), 200);
  EXPECT_EQ(energy_of(m, one_hot({0, 1})), 12 - 200);
  EXPECT_EQ(energy_of(m, one_hot({1, 0})), 12 - 200);
  const auto opt = testing::brute_force_min(m);
  EXPECT_EQ(opt.energy, -188);
  EXPECT_EQ(opt.count, 2u);
}

TEST(Qap, FeasibleEnergyIsCostMinusNp) {
  Xorshift64 rng(17);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto q = random_qap(n, 9, rng);
    const Energy p = default_penalty(q);
    const auto m = qap_to_qubo(q, p);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const Energy cost = qap_cost(q, perm);
      ASSERT_EQ(energy_of(m, one_hot(perm)), cost - static_cast<Energy>(n) * p);
      ASSERT_EQ(report_objective(m, one_hot(perm)), cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Qap, InfeasibleEnergiesBoundedBelow) {
  Xorshift64 rng(23);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto q = random_qap(n, 6, rng);
      const Energy p = trial == 0 ? 1 : default_penalty(q);
      const auto m = qap_to_qubo(q, p);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
        const auto x = bits_of(n * n, mask);
        if (std::holds_alternative<QapInfeasible>(decode_qap(q, x))) {
          ASSERT_GE(energy_of(m, x), -static_cast<Energy>(n - 1) * p);
        }
      }
    }
  }
}

// The default penalty always makes a feasible vector optimal.
TEST(Qap, DefaultPenaltyOptimumIsFeasible) {
  Xorshift64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto q = random_qap(n, 9, rng);
    const auto m = qap_to_qubo(q, default_penalty(q));
    if (n <= 3) {
      const auto opt = testing::brute_force_min(m);
      ASSERT_TRUE(std::holds_alternative<QapSolution>(decode_qap(q, opt.x)));
    } else {
      // Every infeasible vector sits at or above -(n-1)p, so it suffices that
      // the best permutation beats that bound.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      Energy best = kEnergyInfinity;
      do best = std::min(best, qap_cost(q, perm));
      while (std::next_permutation(perm.begin(), perm.end()));
      ASSERT_LT(best, default_penalty(q));
    }
  }
}

TEST(Qap, DecodeFigureTwoPattern) {
  QapInstance q{4, std::vector<Energy>(16, 1), std::vector<Energy>(16, 1)};
  const auto decoded = decode_qap(q, one_hot({3, 1, 0, 2}));
  ASSERT_TRUE(std::holds_alternative<QapSolution>(decoded));
  EXPECT_EQ(std::get<QapSolution>(decoded).perm[0], 3u);
}

TEST(Qap, DecodeReportsBadRowsAndColumns) {
  QapInstance q{3, std::vector<Energy>(9, 0), std::vector<Energy>(9, 0)};
  BitVector x = one_hot({0, 1, 2});
  x[0 * 3 + 1] = 1;  // facility 0 at two locations, location 1 doubly used
  x[2 * 3 + 2] = 0;  // facility 2 nowhere
  const auto decoded = decode_qap(q, x);
  ASSERT_TRUE(std::holds_alternative<QapInfeasible>(decoded));
  const auto& bad = std::get<QapInfeasible>(decoded);
  EXPECT_EQ(bad.bad_rows, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(bad.bad_columns, (std::vector<std::size_t>{1, 2}));
}

TEST(Qap, ThirtyFacilityOffset) {
  Xorshift64 rng(31);
  const auto q = random_qap(30, 5, rng);
  const auto m = qap_to_qubo(q, 1000);
  EXPECT_EQ(m.size(), 900u);
  EXPECT_EQ(m.offset(), 30000);
  std::vector<std::size_t> perm(30);
  std::iota(perm.rbegin(), perm.rend(), 0);
  EXPECT_EQ(energy_of(m, one_hot(perm)), qap_cost(q, perm) - 30000);
}

TEST(Qaplib, ParseFreeWhitespace) {
  const auto q = parse_qaplib("2\n\n0 3\n3 0\n\n0 2 2\n0\n");
  EXPECT_EQ(q.n, 2u);
  EXPECT_EQ(q.flow, (std::vector<Energy>{0, 3, 3, 0}));
  EXPECT_EQ(q.dist, (std::vector<Energy>{0, 2, 2, 0}));
  EXPECT_FALSE(q.has_nonzero_diagonal());
  EXPECT_TRUE(parse_qaplib("1\n5\n0\n").has_nonzero_diagonal());
}

TEST(Qaplib, Errors) {
  EXPECT_THROW(parse_qaplib(""), ParseError);
  EXPECT_THROW(parse_qaplib("2\n0 1 1 0\n0 1 1\n"), ParseError);
  EXPECT_THROW(parse_qaplib("2\n0 1 1 0\n0 1 1 0 7\n"), ParseError);
  EXPECT_THROW(parse_qaplib("2\n0 -1 1 0\n0 1 1 0\n"), ParseError);
  EXPECT_THROW(qap_to_qubo(QapInstance{1, {0}, {0}}, 0), ConfigError);
}

TEST(Qap, DiagonalEntriesIgnored) {
  QapInstance a{2, {0, 3, 3, 0}, {0, 2, 2, 0}};
  QapInstance b{2, {7, 3, 3, 7}, {5, 2, 2, 5}};
  EXPECT_EQ(qap_to_qubo(a, 50), qap_to_qubo(b, 50));
  EXPECT_EQ(qap_cost(a, {1, 0}), qap_cost(b, {1, 0}));
}

TEST(Qasp, ResolutionOneValues) {
  Xorshift64 rng(37);
  const auto g = random_graph(40, 0.2, 1, 1, rng);
  const auto ising = gen_qasp(g, 1, 5);
  ASSERT_EQ(ising.couplings().size(), g.edges().size());
  for (const auto& c : ising.couplings()) EXPECT_TRUE(c.value == 1 || c.value == -1);
  for (Energy h : ising.biases()) {
    EXPECT_NE(h, 0);
    EXPECT_LE(std::abs(h), 4);
  }
}

TEST(Qasp, HighResolutionRange) {
  Xorshift64 rng(41);
  const auto g = random_graph(60, 0.3, 1, 1, rng);
  const auto ising = gen_qasp(g, 256, 9);
  bool saw_large = false;
  for (const auto& c : ising.couplings()) {
    EXPECT_NE(c.value, 0);
    EXPECT_LE(std::abs(c.value), 256);
    saw_large |= std::abs(c.value) > 128;
  }
  for (Energy h : ising.biases()) {
    EXPECT_NE(h, 0);
    EXPECT_LE(std::abs(h), 1024);
  }
  EXPECT_TRUE(saw_large);
}

TEST(Qasp, SeedDeterminism) {
  Xorshift64 rng(43);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < 100; ++k) edges.push_back({k, k + 1, 1});
  const WeightedGraph g(101, edges);
  EXPECT_EQ(gen_qasp(g, 3, 77), gen_qasp(g, 3, 77));
  EXPECT_FALSE(gen_qasp(g, 3, 77) == gen_qasp(g, 3, 78));
  EXPECT_THROW(gen_qasp(g, 0, 1), ConfigError);
}

TEST(Qasp, UniformOverNonzeroValues) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < 4000; ++k) edges.push_back({k, k + 1, 1});
  const auto ising = gen_qasp(WeightedGraph(4001, edges), 2, 3);
  std::array<int, 5> counts{};  // values -2, -1, (0), 1, 2
  for (const auto& c : ising.couplings()) ++counts[static_cast<std::size_t>(c.value + 2)];
  EXPECT_EQ(counts[2], 0);
  for (std::size_t k : {0u, 1u, 3u, 4u}) EXPECT_NEAR(counts[k], 1000, 4 * std::sqrt(1000 * 0.75));
}

}  // namespace
}  // namespace dabs
