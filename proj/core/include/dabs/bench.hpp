#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dabs/solver.hpp"

namespace dabs {

struct TrialOutcome {
  std::uint64_t seed = 0;
  bool success = false;  ///< best energy reached the target
  Energy best_energy = kEnergyInfinity;
  double time_to_best = 0.0;
  double elapsed = 0.0;
  std::uint64_t total_flips = 0;
  std::optional<MainAlgorithm> first_best_algorithm;
  std::optional<GeneticOp> first_best_genop;
};

/// Runs `trials` independent solves; trial k uses seed config.seed + k and
/// stops early once `target` is reached.
std::vector<TrialOutcome> run_trials(const QuboModel& model, RunConfig config, Energy target, std::size_t trials);

struct HistogramBucket {
  double lower = 0.0;
  std::optional<double> upper;  ///< nullopt for the last, open-ended bucket
  std::size_t count = 0;
};

/// Buckets [edges[i], edges[i+1]) plus a final [edges.back(), inf).
/// Values below edges.front() land in the first bucket.
std::vector<HistogramBucket> histogram(const std::vector<double>& values, const std::vector<double>& edges);

struct BenchSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::optional<double> mean_tts;  ///< over successful trials only
  std::vector<HistogramBucket> tts_histogram;
  std::array<std::size_t, kMainAlgorithmCount> first_best_algorithm{};
  std::array<std::size_t, kGeneticOpCount> first_best_genop{};
};

BenchSummary summarize(const std::vector<TrialOutcome>& outcomes, const std::vector<double>& edges);

}  // namespace dabs
