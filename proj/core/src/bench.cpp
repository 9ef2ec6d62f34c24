#include "dabs/bench.hpp"

#include <algorithm>

#include "dabs/error.hpp"

namespace dabs {

std::vector<TrialOutcome> run_trials(const QuboModel& model, RunConfig config, Energy target, std::size_t trials) {
  config.limits.target_energy = target;
  const std::uint64_t base = config.seed;
  std::vector<TrialOutcome> out;
  out.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    config.seed = base + k;
    const RunResult r = solve(model, config);
    TrialOutcome t;
    t.seed = config.seed;
    t.best_energy = r.best_energy;
    t.success = r.found() && r.best_energy <= target;
    t.time_to_best = r.time_to_best;
    t.elapsed = r.elapsed;
    t.total_flips = r.total_flips;
    t.first_best_algorithm = r.first_best_algorithm;
    t.first_best_genop = r.first_best_genop;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<HistogramBucket> histogram(const std::vector<double>& values, const std::vector<double>& edges) {
  if (edges.empty()) throw ConfigError("histogram needs at least one edge");
  if (!std::is_sorted(edges.begin(), edges.end())) throw ConfigError("histogram edges must be ascending");
  std::vector<HistogramBucket> buckets(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    buckets[i].lower = edges[i];
    if (i + 1 < edges.size()) buckets[i].upper = edges[i + 1];
  }
  for (double v : values) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    const std::size_t idx = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    ++buckets[idx].count;
  }
  return buckets;
}

BenchSummary summarize(const std::vector<TrialOutcome>& outcomes, const std::vector<double>& edges) {
  BenchSummary s;
  s.trials = outcomes.size();
  std::vector<double> tts;
  for (const auto& t : outcomes) {
    if (!t.success) continue;
    ++s.successes;
    tts.push_back(t.time_to_best);
    if (t.first_best_algorithm) ++s.first_best_algorithm[static_cast<std::size_t>(*t.first_best_algorithm)];
    if (t.first_best_genop) ++s.first_best_genop[static_cast<std::size_t>(*t.first_best_genop)];
  }
  s.success_rate = s.trials ? static_cast<double>(s.successes) / static_cast<double>(s.trials) : 0.0;
  if (!tts.empty()) {
    double sum = 0.0;
    for (double v : tts) sum += v;
    s.mean_tts = sum / static_cast<double>(tts.size());
  }
  if (!edges.empty()) s.tts_histogram = histogram(tts, edges);
  return s;
}

}  // namespace dabs
