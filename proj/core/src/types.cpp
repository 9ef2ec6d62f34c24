#include "dabs/types.hpp"

#include "dabs/error.hpp"

namespace dabs {

std::string_view to_string(MainAlgorithm a) noexcept {
  switch (a) {
    case MainAlgorithm::kMaxMin: return "MaxMin";
    case MainAlgorithm::kCyclicMin: return "CyclicMin";
    case MainAlgorithm::kRandomMin: return "RandomMin";
    case MainAlgorithm::kPositiveMin: return "PositiveMin";
    case MainAlgorithm::kTwoNeighbor: return "TwoNeighbor";
  }
  return "?";
}

std::string_view to_string(GeneticOp op) noexcept {
  switch (op) {
    case GeneticOp::kMutation: return "Mutation";
    case GeneticOp::kCrossover: return "Crossover";
    case GeneticOp::kXrossover: return "Xrossover";
    case GeneticOp::kZero: return "Zero";
    case GeneticOp::kOne: return "One";
    case GeneticOp::kIntervalZero: return "IntervalZero";
    case GeneticOp::kBest: return "Best";
    case GeneticOp::kRandom: return "Random";
  }
  return "?";
}

std::optional<MainAlgorithm> parse_main_algorithm(std::string_view name) noexcept {
  for (auto a : kAllMainAlgorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::optional<GeneticOp> parse_genetic_op(std::string_view name) noexcept {
  for (auto op : kAllGeneticOps) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw DimensionError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::string to_bitstring(const BitVector& x) {
  std::string s(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) s[i] = '1';
  }
  return s;
}

std::optional<BitVector> parse_bitstring(std::string_view text) {
  BitVector x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') return std::nullopt;
    x[i] = text[i] == '1';
  }
  return x;
}

}  // namespace dabs
