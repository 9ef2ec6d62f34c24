#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dabs/error.hpp"

namespace {

struct RunFlags {
  dabs::RunConfig config;
  std::optional<std::int64_t> target;
  std::optional<std::uint64_t> max_batches;
  std::optional<std::uint64_t> max_flips;
  std::vector<std::string> algorithms;
  std::vector<std::string> genops;
  std::string format = "auto";
  std::optional<std::int64_t> penalty;

  dabs::RunConfig resolve() const {
    dabs::RunConfig c = config;
    c.limits.target_energy = target;
    c.limits.max_batches = max_batches;
    c.limits.max_flips = max_flips;
    for (const auto& name : algorithms) {
      const auto a = dabs::parse_main_algorithm(name);
      if (!a) throw dabs::ConfigError("unknown algorithm '" + name + "'");
      c.ga.algorithms.push_back(*a);
    }
    for (const auto& name : genops) {
      const auto op = dabs::parse_genetic_op(name);
      if (!op) throw dabs::ConfigError("unknown genetic operation '" + name + "'");
      c.ga.genops.push_back(*op);
    }
    return c;
  }
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  auto& c = f.config;
  cmd->add_option("--pools", c.pools, "Solution pools (islands)")->capture_default_str();
  cmd->add_option("--workers-per-pool", c.workers_per_pool, "Search workers per pool")->capture_default_str();
  cmd->add_option("--s", c.batch.s, "Main-search flip factor: T = ceil(s n)")->capture_default_str();
  cmd->add_option("--b", c.batch.b, "Batch flip factor: budget = ceil(b n)")->capture_default_str();
  cmd->add_option("--tabu", c.batch.tabu_period, "Tabu period")->capture_default_str();
  cmd->add_option("--pool-size", c.ga.pool_capacity, "Entries per solution pool")->capture_default_str();
  cmd->add_option("--epsilon", c.ga.exploration, "Uniform tag-selection rate")->capture_default_str();
  cmd->add_option("--time-limit", c.limits.time_limit_seconds, "Wall-clock limit in seconds")->capture_default_str();
  cmd->add_option("--target-energy", f.target, "Stop once this energy is reached");
  cmd->add_option("--max-batches", f.max_batches, "Stop after this many finished batches");
  cmd->add_option("--max-flips", f.max_flips, "Stop once this many flips are done");
  cmd->add_option("--seed", c.seed, "Root seed")->capture_default_str();
  cmd->add_flag("--restart", c.restart.enabled, "Reinitialise pools once they collapse onto the best");
  cmd->add_option("--restart-stall", c.restart.stall_seconds, "Seconds without improvement before a restart")
      ->capture_default_str();
  cmd->add_option("--algorithms", f.algorithms, "Restrict main searches (e.g. CyclicMin)")->delimiter(',');
  cmd->add_option("--genops", f.genops, "Restrict genetic operations (e.g. Mutation)")->delimiter(',');
  cmd->add_option("--format", f.format, "auto, qubo, ising, gset or qaplib")->capture_default_str();
  cmd->add_option("--penalty", f.penalty, "QAP one-hot penalty (qaplib input)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DABS: diverse adaptive bulk search for QUBO"};
  app.require_subcommand(1);

  std::string path;
  RunFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve a QUBO/Ising instance and print the result as JSON");
  solve->add_option("instance", path, "Instance file")->required();
  add_run_flags(solve, solve_flags);

  std::string bits;
  std::string verify_format = "auto";
  std::optional<std::int64_t> verify_penalty;
  auto* verify = app.add_subcommand("verify", "Recompute energy and objective of a bit string");
  verify->add_option("instance", path, "Instance file")->required();
  verify->add_option("solution", bits, "Bit string, bit 0 first")->required();
  verify->add_option("--format", verify_format, "auto, qubo, ising, gset or qaplib")->capture_default_str();
  verify->add_option("--penalty", verify_penalty, "QAP one-hot penalty (qaplib input)");

  std::string kind;
  std::string input;
  std::string output;
  std::optional<std::int64_t> penalty;
  auto* reduce = app.add_subcommand("reduce", "Reduce MaxCut (Gset) or QAP (QAPLIB) to a QUBO file");
  reduce->add_option("kind", kind, "maxcut or qap")->required()->check(CLI::IsMember({"maxcut", "qap"}));
  reduce->add_option("input", input, "Input file")->required();
  reduce->add_option("-o,--output", output, "Output file (default stdout)");
  reduce->add_option("--penalty", penalty, "QAP one-hot penalty");

  std::int64_t resolution = 1;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen-qasp", "Random Ising model on a topology edge list (Gset format)");
  gen->add_option("topology", input, "Topology file")->required();
  gen->add_option("--resolution", resolution, "Coupling resolution r >= 1")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  RunFlags bench_flags;
  dabs::cli::BenchOptions bench_opt;
  std::optional<std::int64_t> bench_target;
  auto* bench = app.add_subcommand("bench", "Repeated trials with time-to-target statistics");
  bench->add_option("instance", path, "Instance file")->required();
  add_run_flags(bench, bench_flags);
  bench->add_option("--trials", bench_opt.trials, "Independent trials")->capture_default_str();
  bench->add_option("--target", bench_target, "Target energy (default: <instance>.best)");
  bench->add_option("--out", bench_opt.csv_path, "Per-trial CSV output");
  bench->add_option("--buckets", bench_opt.bucket_edges, "Histogram bucket edges in seconds")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cap = dabs::cli::thread_cap_from_env();
    if (solve->parsed()) {
      auto config = solve_flags.resolve();
      dabs::cli::apply_thread_cap(config, cap, std::cerr);
      const dabs::cli::SolveOptions opt{dabs::cli::parse_format(solve_flags.format), solve_flags.penalty};
      return dabs::cli::cmd_solve(path, config, opt, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      const dabs::cli::SolveOptions opt{dabs::cli::parse_format(verify_format), verify_penalty};
      return dabs::cli::cmd_verify(path, bits, opt, std::cout, std::cerr);
    }
    if (reduce->parsed()) {
      const auto k = kind == "maxcut" ? dabs::cli::ReduceKind::kMaxCut : dabs::cli::ReduceKind::kQap;
      return dabs::cli::cmd_reduce(k, input, output, penalty, std::cout, std::cerr);
    }
    if (gen->parsed()) return dabs::cli::cmd_gen_qasp(input, resolution, gen_seed, output, std::cout, std::cerr);
    if (bench->parsed()) {
      auto config = bench_flags.resolve();
      dabs::cli::apply_thread_cap(config, cap, std::cerr);
      bench_opt.solve = {dabs::cli::parse_format(bench_flags.format), bench_flags.penalty};
      bench_opt.target = bench_target;
      return dabs::cli::cmd_bench(path, config, bench_opt, std::cout, std::cerr);
    }
  } catch (const dabs::ParseError& e) {
    std::cerr << "dabs: parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "dabs: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
