#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dabs {

/// Exact energy value. Every energy in the system is an integer.
using Energy = std::int64_t;

/// +infinity sentinel for "no solution recorded yet".
inline constexpr Energy kEnergyInfinity = std::numeric_limits<Energy>::max();

/// One byte per bit, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;

enum class MainAlgorithm : std::uint8_t {
  kMaxMin,
  kCyclicMin,
  kRandomMin,
  kPositiveMin,
  kTwoNeighbor,
};
inline constexpr std::size_t kMainAlgorithmCount = 5;

enum class GeneticOp : std::uint8_t {
  kMutation,
  kCrossover,
  kXrossover,
  kZero,
  kOne,
  kIntervalZero,
  kBest,
  kRandom,
};
inline constexpr std::size_t kGeneticOpCount = 8;

inline constexpr std::array<MainAlgorithm, kMainAlgorithmCount> kAllMainAlgorithms = {
    MainAlgorithm::kMaxMin, MainAlgorithm::kCyclicMin, MainAlgorithm::kRandomMin,
    MainAlgorithm::kPositiveMin, MainAlgorithm::kTwoNeighbor};

inline constexpr std::array<GeneticOp, kGeneticOpCount> kAllGeneticOps = {
    GeneticOp::kMutation, GeneticOp::kCrossover, GeneticOp::kXrossover,
    GeneticOp::kZero,     GeneticOp::kOne,       GeneticOp::kIntervalZero,
    GeneticOp::kBest,     GeneticOp::kRandom};

std::string_view to_string(MainAlgorithm a) noexcept;
std::string_view to_string(GeneticOp op) noexcept;
std::optional<MainAlgorithm> parse_main_algorithm(std::string_view name) noexcept;
std::optional<GeneticOp> parse_genetic_op(std::string_view name) noexcept;

std::size_t hamming_distance(const BitVector& a, const BitVector& b);

/// "0101..." rendering, bit 0 first.
std::string to_bitstring(const BitVector& x);
std::optional<BitVector> parse_bitstring(std::string_view text);

}  // namespace dabs
