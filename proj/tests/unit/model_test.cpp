#include <gtest/gtest.h>

#include <limits>

#include "dabs/error.hpp"
#include "dabs/model.hpp"
#include "oracle.hpp"

namespace dabs {
namespace {

using testing::bits_of;
using testing::three_bit_model;

TEST(QuboModel, EnergyOfThreeBitExample) {
  const auto m = three_bit_model();
  EXPECT_EQ(energy_of(m, {1, 1, 0}), -2);
  const auto opt = testing::brute_force_min(m);
  EXPECT_EQ(opt.energy, -5);
  EXPECT_EQ(opt.x, (BitVector{1, 0, 1}));
  EXPECT_EQ(opt.count, 1u);
}

TEST(QuboModel, EmptyModel) {
  const QuboModel m(0, {}, {});
  EXPECT_EQ(m.size(), 0u);
  EXPECT_EQ(energy_of(m, {}), 0);
  EXPECT_EQ(report_objective(m, {}), 0);
}

TEST(QuboModel, CanonicalisesTerms) {
  const QuboModel m(4, {{2, 3, 5}, {0, 1, 0}, {0, 2, -1}}, {0, 0, 0, 0}, 7);
  ASSERT_EQ(m.off_diag().size(), 2u);
  EXPECT_EQ(m.off_diag()[0], (QuboTerm{0, 2, -1}));
  EXPECT_EQ(m.off_diag()[1], (QuboTerm{2, 3, 5}));
  EXPECT_EQ(m.neighbors(1).size(), 0u);
  EXPECT_EQ(m.neighbors(2).size(), 2u);
  EXPECT_EQ(m.magnitude_bound(), 1 + 5 + 7);
}

TEST(QuboModel, RejectsBadTerms) {
  EXPECT_THROW(QuboModel(2, {{1, 0, 3}}, {0, 0}), DimensionError);
  EXPECT_THROW(QuboModel(2, {{0, 2, 3}}, {0, 0}), DimensionError);
  EXPECT_THROW(QuboModel(2, {{0, 0, 3}}, {0, 0}), DimensionError);
  EXPECT_THROW(QuboModel(2, {{0, 1, 3}, {0, 1, 4}}, {0, 0}), Error);
  EXPECT_THROW(QuboModel(2, {}, {0}), DimensionError);
}

TEST(QuboModel, OverflowGuard) {
  const Energy big = std::numeric_limits<Energy>::max() / 2 + 1;
  EXPECT_THROW(QuboModel(2, {{0, 1, big}}, {big, 0}), CapacityError);
  EXPECT_THROW(QuboModel(1, {}, {std::numeric_limits<Energy>::min()}), CapacityError);
  EXPECT_NO_THROW(QuboModel(2, {{0, 1, big - 1}}, {big - 1, 0}));
}

TEST(QuboModel, DimensionMismatch) {
  EXPECT_THROW(energy_of(three_bit_model(), {1, 0}), DimensionError);
}

TEST(QuboModel, AdjacencyEnergyMatchesDenseDoubleLoop) {
  Xorshift64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 12);
    const auto m = testing::random_qubo(n, -9, 9, rng, 0.6);
    // Full symmetric matrix, each off-diagonal weight split over both halves.
    std::vector<std::vector<Energy>> dense(n, std::vector<Energy>(n, 0));
    for (std::size_t i = 0; i < n; ++i) dense[i][i] = 2 * m.diag()[i];
    for (const auto& t : m.off_diag()) dense[t.i][t.j] = dense[t.j][t.i] = t.w;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto x = bits_of(n, mask);
      Energy twice = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) twice += dense[i][j] * x[i] * x[j];
      }
      ASSERT_EQ(2 * energy_of(m, x), twice);
    }
  }
}

TEST(QuboBuilder, AccumulatesInAnyOrder) {
  QuboBuilder b(3);
  b.add_quadratic(2, 0, 4);
  b.add_quadratic(0, 2, -1);
  b.add_linear(1, 5);
  b.add_linear(1, -2);
  b.add_offset(9);
  const QuboModel m = std::move(b).build();
  EXPECT_EQ(m, QuboModel(3, {{0, 2, 3}}, {0, 3, 0}, 9));
  QuboBuilder bad(2);
  EXPECT_THROW(bad.add_quadratic(1, 1, 1), DimensionError);
  EXPECT_THROW(bad.add_linear(2, 1), DimensionError);
}

TEST(Ising, SingleSpin) {
  const IsingModel ising(1, {}, {1});
  const auto q = ising_to_qubo(ising);
  EXPECT_EQ(q.diag()[0], 2);
  EXPECT_EQ(q.offset(), -1);
  EXPECT_EQ(report_objective(q, {0}), -1);
  EXPECT_EQ(report_objective(q, {1}), 1);
}

TEST(Ising, TwoSpinCoupling) {
  const IsingModel ising(2, {{0, 1, 1}}, {0, 0});
  const auto q = ising_to_qubo(ising);
  EXPECT_EQ(q, QuboModel(2, {{0, 1, 4}}, {-2, -2}, 1));
  const std::vector<Energy> h = {1, -1, -1, 1};  // x = 00, 10, 01, 11
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    const auto x = bits_of(2, mask);
    EXPECT_EQ(hamiltonian(ising, x), h[mask]);
    EXPECT_EQ(report_objective(q, x), h[mask]);
  }
}

TEST(Ising, EmptyModel) {
  const auto q = ising_to_qubo(IsingModel(0, {}, {}));
  EXPECT_EQ(q.size(), 0u);
  EXPECT_EQ(q.offset(), 0);
}

// The converted energy differs from H by the constant offset, so the two
// models share their minimisers.
TEST(Ising, ConversionPreservesObjectiveExhaustively) {
  Xorshift64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 10);
    std::vector<IsingCoupling> cs;
    std::vector<Energy> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = uniform_int(rng, -5, 5);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (bernoulli(rng, 0.5)) cs.push_back({i, j, uniform_int(rng, -5, 5)});
      }
    }
    const IsingModel ising(n, cs, h);
    const auto q = ising_to_qubo(ising);
    Energy best_h = kEnergyInfinity;
    Energy best_e = kEnergyInfinity;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto x = bits_of(n, mask);
      const Energy e = energy_of(q, x);
      const Energy hx = hamiltonian(ising, x);
      ASSERT_EQ(e + q.offset(), hx);
      best_h = std::min(best_h, hx);
      best_e = std::min(best_e, e);
    }
    EXPECT_EQ(best_e + q.offset(), best_h);
  }
}

TEST(Ising, RejectsBadInput) {
  EXPECT_THROW(IsingModel(2, {{0, 0, 1}}, {0, 0}), DimensionError);
  EXPECT_THROW(IsingModel(2, {{0, 1, 1}, {1, 0, 1}}, {0, 0}), Error);
  EXPECT_THROW(IsingModel(2, {}, {0}), DimensionError);
  const Energy big = std::numeric_limits<Energy>::max() / 2;
  EXPECT_THROW(ising_to_qubo(IsingModel(2, {{0, 1, big}}, {0, 0})), CapacityError);
}

TEST(QuboText, ParsesHeaderAndEntries) {
  const auto m = parse_qubo("QUBO 2 1 0\n0 1 4\n0 0 -2\n");
  EXPECT_EQ(m, QuboModel(2, {{0, 1, 4}}, {-2, 0}));
}

TEST(QuboText, CommentsBlankLinesAndOffset) {
  const auto m = parse_qubo("# header follows\n\nQUBO 3 1 -7  # offset\n  1 2 +5\n\n2 2 1\n");
  EXPECT_EQ(m, QuboModel(3, {{1, 2, 5}}, {0, 0, 1}, -7));
}

TEST(QuboText, RoundTrip) {
  const auto m = three_bit_model();
  EXPECT_EQ(parse_qubo(write_qubo(m)), m);
  Xorshift64 rng(5);
  const auto r = testing::random_qubo(20, -50, 50, rng, 0.3);
  const auto text = write_qubo(r);
  EXPECT_EQ(parse_qubo(text), r);
  EXPECT_EQ(write_qubo(parse_qubo(text)), text);
}

TEST(QuboText, ErrorsCarryLineNumbers) {
  const auto line_of = [](std::string_view text) {
    try {
      parse_qubo(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("QUBO 3 1 0\n0 0 1\n2 1 4\n"), 3u);   // i > j
  EXPECT_EQ(line_of("QUBO 2 1 0\n0 2 4\n"), 2u);          // out of range
  EXPECT_EQ(line_of("QUBO 2 2 0\n0 1 4\n0 1 5\n"), 3u);   // duplicate
  EXPECT_EQ(line_of("QUBO 2 1 0\n0 1 x\n"), 2u);          // not an integer
  EXPECT_EQ(line_of("QUBO 2 1 0\n0 1 1.5\n"), 2u);
  EXPECT_EQ(line_of("QUBO 2 1 0\n0 1\n"), 2u);            // field count
  EXPECT_EQ(line_of("QUBO 2 0\n"), 1u);                   // short header
  EXPECT_EQ(line_of("ISING 2 0\n"), 1u);                  // wrong keyword
  EXPECT_EQ(line_of("QUBO 2 2 0\n0 1 1\n"), 2u);          // count mismatch
  EXPECT_THROW(parse_qubo(""), ParseError);
}

TEST(IsingText, BiasLine) {
  const auto m = parse_ising("ISING 1 0\n0 0 3\n");
  EXPECT_EQ(m, IsingModel(1, {}, {3}));
}

TEST(IsingText, RoundTripRandom) {
  Xorshift64 rng(9);
  std::vector<IsingCoupling> cs;
  std::vector<Energy> h(20);
  for (std::size_t i = 0; i < 20; ++i) {
    h[i] = uniform_int(rng, -3, 3);
    for (std::size_t j = i + 1; j < 20; ++j) {
      if (bernoulli(rng, 0.2)) cs.push_back({i, j, uniform_int(rng, 1, 9)});
    }
  }
  const IsingModel m(20, cs, h);
  const auto text = write_ising(m);
  EXPECT_EQ(parse_ising(text), m);
  EXPECT_EQ(write_ising(parse_ising(text)), text);
}

TEST(IsingText, DuplicateCoupling) {
  EXPECT_THROW(parse_ising("ISING 2 2\n0 1 1\n0 1 1\n"), ParseError);
}

TEST(Bitstrings, RoundTripAndReject) {
  EXPECT_EQ(to_bitstring({1, 0, 1}), "101");
  EXPECT_EQ(parse_bitstring("0110"), (BitVector{0, 1, 1, 0}));
  EXPECT_FALSE(parse_bitstring("01a").has_value());
  EXPECT_EQ(hamming_distance({1, 0, 1}, {0, 0, 1}), 1u);
  EXPECT_THROW(hamming_distance({1}, {1, 0}), DimensionError);
}

TEST(Tags, NamesRoundTrip) {
  for (auto a : kAllMainAlgorithms) EXPECT_EQ(parse_main_algorithm(to_string(a)), a);
  for (auto op : kAllGeneticOps) EXPECT_EQ(parse_genetic_op(to_string(op)), op);
  EXPECT_FALSE(parse_main_algorithm("Annealing").has_value());
}

}  // namespace
}  // namespace dabs
