#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dabs/model.hpp"
#include "dabs/reductions.hpp"
#include "dabs/solver.hpp"

namespace dabs::cli {

/// Input kinds. Auto picks QUBO or ISING from the header keyword; bare
/// integer files must name their kind explicitly.
enum class Format { kAuto, kQubo, kIsing, kGset, kQaplib };
Format parse_format(std::string_view name);

/// A solvable instance plus whatever is needed to map a bit vector back to
/// the source problem.
struct LoadedInstance {
  QuboModel model;
  std::optional<WeightedGraph> graph;  ///< set for MaxCut
  std::optional<QapInstance> qap;      ///< set for QAP
  std::optional<Energy> penalty;       ///< QAP penalty used
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Loads and, for Gset/QAPLIB/Ising input, reduces to QUBO.
LoadedInstance load_instance(const std::string& text, Format format, std::optional<Energy> penalty,
                             std::ostream& log);

/// Applies DABS_THREADS-style capping and logs what changed.
void apply_thread_cap(RunConfig& config, std::optional<std::size_t> max_threads, std::ostream& log);
std::optional<std::size_t> thread_cap_from_env();

/// RunResult as a JSON document (one line, stable key order).
std::string result_json(const LoadedInstance& inst, const RunConfig& config, const RunResult& r);

struct SolveOptions {
  Format format = Format::kAuto;
  std::optional<Energy> penalty;
};
/// Returns the process exit code.
int cmd_solve(const std::string& path, RunConfig config, const SolveOptions& opt, std::ostream& out,
              std::ostream& log);

/// Recomputes energy and objective of `bits` on the instance.
int cmd_verify(const std::string& path, const std::string& bits, const SolveOptions& opt, std::ostream& out,
               std::ostream& log);

enum class ReduceKind { kMaxCut, kQap };
/// Writes the QUBO text to `output` (stdout when empty).
int cmd_reduce(ReduceKind kind, const std::string& input, const std::string& output, std::optional<Energy> penalty,
               std::ostream& out, std::ostream& log);

int cmd_gen_qasp(const std::string& topology, std::int64_t resolution, std::uint64_t seed, const std::string& output,
                 std::ostream& out, std::ostream& log);

struct BenchOptions {
  SolveOptions solve;
  std::size_t trials = 10;
  std::optional<Energy> target;  ///< else read from "<instance>.best"
  std::string csv_path;          ///< per-trial CSV; empty skips it
  std::vector<double> bucket_edges = {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 100.0};
};
int cmd_bench(const std::string& path, RunConfig config, const BenchOptions& opt, std::ostream& out,
              std::ostream& log);

}  // namespace dabs::cli
