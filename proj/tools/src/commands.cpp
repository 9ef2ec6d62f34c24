#include "commands.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "dabs/bench.hpp"
#include "dabs/error.hpp"

namespace dabs::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string_view first_token(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      break;
    }
  }
  std::size_t j = i;
  while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
  return text.substr(i, j - i);
}

Json optional_energy(Energy e) { return e == kEnergyInfinity ? Json(nullptr) : Json(e); }

Json problem_section(const LoadedInstance& inst, const BitVector& x) {
  Json j = Json::object();
  if (inst.graph) {
    const auto cut = decode_cut(*inst.graph, x);
    j["kind"] = "maxcut";
    j["cut"] = cut.value;
  } else if (inst.qap) {
    j["kind"] = "qap";
    j["penalty"] = *inst.penalty;
    const auto decoded = decode_qap(*inst.qap, x);
    if (const auto* sol = std::get_if<QapSolution>(&decoded)) {
      j["feasible"] = true;
      j["cost"] = sol->cost;
      j["permutation"] = sol->perm;
    } else {
      const auto& bad = std::get<QapInfeasible>(decoded);
      j["feasible"] = false;
      j["bad_rows"] = bad.bad_rows;
      j["bad_columns"] = bad.bad_columns;
    }
  }
  return j;
}



}  // namespace

Format parse_format(std::string_view name) {
  if (name == "auto") return Format::kAuto;
  if (name == "qubo") return Format::kQubo;
  if (name == "ising") return Format::kIsing;
  if (name == "gset") return Format::kGset;
  if (name == "qaplib") return Format::kQaplib;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

LoadedInstance load_instance(const std::string& text, Format format, std::optional<Energy> penalty,
                             std::ostream& log) {
  if (format == Format::kAuto) {
    const auto tok = first_token(text);
    if (tok == "QUBO") {
      format = Format::kQubo;
    } else if (tok == "ISING") {
      format = Format::kIsing;
    } else {
      throw ParseError(1, "cannot detect the format; pass --format gset or --format qaplib for bare integer files");
    }
  }
  switch (format) {
    case Format::kQubo: return {parse_qubo(text), {}, {}, {}};
    case Format::kIsing: return {ising_to_qubo(parse_ising(text)), {}, {}, {}};
    case Format::kGset: {
      auto g = parse_gset(text);
      auto q = maxcut_to_qubo(g);
      return {std::move(q), std::move(g), {}, {}};
    }
    case Format::kQaplib: {
      auto inst = parse_qaplib(text);
      if (inst.has_nonzero_diagonal()) log << "warning: nonzero QAP diagonal entries are ignored\n";
      const Energy p = penalty ? *penalty : default_penalty(inst);
      auto q = qap_to_qubo(inst, p);
      return {std::move(q), {}, std::move(inst), p};
    }
    case Format::kAuto: break;
  }
  throw ConfigError("unreachable format");
}

std::optional<std::size_t> thread_cap_from_env() {
  const char* v = std::getenv("DABS_THREADS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw ConfigError("DABS_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

void apply_thread_cap(RunConfig& config, std::optional<std::size_t> max_threads, std::ostream& log) {
  if (!max_threads) return;
  const std::size_t before_p = config.pools;
  const std::size_t before_w = config.workers_per_pool;
  if (cap_threads(config, *max_threads)) {
    log << "thread cap " << *max_threads << ": " << before_p << "x" << before_w << " -> " << config.pools << "x"
        << config.workers_per_pool << " (pools x workers)\n";
  }
}

std::string result_json(const LoadedInstance& inst, const RunConfig& config, const RunResult& r) {
  Json j;
  j["n"] = inst.model.size();
  j["offset"] = inst.model.offset();
  j["best_energy"] = optional_energy(r.best_energy);
  j["best_objective"] = optional_energy(r.best_objective);
  j["solution"] = r.found() ? Json(to_bitstring(r.solution)) : Json(nullptr);
  j["termination"] = std::string(to_string(r.reason));
  j["time_to_best"] = r.time_to_best;
  j["elapsed"] = r.elapsed;
  j["total_flips"] = r.total_flips;
  j["flips_per_second"] = r.flips_per_second();
  j["batches"] = r.batches;
  j["dispatched"] = r.dispatched.total();
  Json first = Json::object();
  first["algorithm"] = r.first_best_algorithm ? Json(std::string(to_string(*r.first_best_algorithm))) : Json(nullptr);
  first["genop"] = r.first_best_genop ? Json(std::string(to_string(*r.first_best_genop))) : Json(nullptr);
  j["first_best"] = first;
  Json algs = Json::object();
  for (auto a : kAllMainAlgorithms) algs[std::string(to_string(a))] = r.frequency(a);
  Json ops = Json::object();
  for (auto op : kAllGeneticOps) ops[std::string(to_string(op))] = r.frequency(op);
  j["frequencies"] = {{"algorithms", algs}, {"genops", ops}};
  j["config"] = {{"pools", config.pools},
                 {"workers_per_pool", config.workers_per_pool},
                 {"s", config.batch.s},
                 {"b", config.batch.b},
                 {"tabu", config.batch.tabu_period},
                 {"pool_size", config.ga.pool_capacity},
                 {"epsilon", config.ga.exploration},
                 {"seed", config.seed}};
  if (inst.graph || inst.qap) j["problem"] = r.found() ? problem_section(inst, r.solution) : Json(nullptr);
  if (!r.worker_errors.empty()) j["worker_errors"] = r.worker_errors;
  return j.dump();
}

int cmd_solve(const std::string& path, RunConfig config, const SolveOptions& opt, std::ostream& out,
              std::ostream& log) {
  const LoadedInstance inst = load_instance(read_file(path), opt.format, opt.penalty, log);
  if (inst.penalty) log << "qap penalty " << *inst.penalty << "\n";
  const RunResult r = solve(inst.model, config);
  log << "stopped (" << to_string(r.reason) << ") after " << r.elapsed << " s, " << r.total_flips << " flips\n";
  out << result_json(inst, config, r) << "\n";
  return 0;
}

int cmd_verify(const std::string& path, const std::string& bits, const SolveOptions& opt, std::ostream& out,
               std::ostream& log) {
  const LoadedInstance inst = load_instance(read_file(path), opt.format, opt.penalty, log);
  const auto x = parse_bitstring(bits);
  if (!x) throw ConfigError("solution must be a string of 0/1 characters");
  if (x->size() != inst.model.size()) {
    throw DimensionError("solution has " + std::to_string(x->size()) + " bits, model has " +
                         std::to_string(inst.model.size()));
  }
  Json j;
  j["n"] = inst.model.size();
  j["energy"] = energy_of(inst.model, *x);
  j["objective"] = report_objective(inst.model, *x);
  if (inst.graph || inst.qap) j["problem"] = problem_section(inst, *x);
  out << j.dump() << "\n";
  return 0;
}

int cmd_reduce(ReduceKind kind, const std::string& input, const std::string& output, std::optional<Energy> penalty,
               std::ostream& out, std::ostream& log) {
  const std::string text = read_file(input);
  std::string qubo;
  std::optional<Energy> chosen;
  if (kind == ReduceKind::kMaxCut) {
    if (penalty) log << "warning: --penalty has no effect on maxcut\n";
    qubo = write_qubo(maxcut_to_qubo(parse_gset(text)));
  } else {
    const LoadedInstance inst = load_instance(text, Format::kQaplib, penalty, log);
    chosen = inst.penalty;
    qubo = write_qubo(inst.model);
  }
  if (output.empty()) {
    out << qubo;
    if (chosen) log << "penalty " << *chosen << "\n";
  } else {
    write_file(output, qubo);
    if (chosen) out << "penalty " << *chosen << "\n";
  }
  return 0;
}

int cmd_gen_qasp(const std::string& topology, std::int64_t resolution, std::uint64_t seed, const std::string& output,
                 std::ostream& out, std::ostream&) {
  const std::string text = write_ising(gen_qasp(parse_gset(read_file(topology)), resolution, seed));
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return 0;
}

int cmd_bench(const std::string& path, RunConfig config, const BenchOptions& opt, std::ostream& out,
              std::ostream& log) {
  if (opt.trials == 0) throw ConfigError("--trials must be at least 1");
  const LoadedInstance inst = load_instance(read_file(path), opt.solve.format, opt.solve.penalty, log);
  Energy target = 0;
  if (opt.target) {
    target = *opt.target;
  } else {
    const std::string sidecar = path + ".best";
    std::istringstream in(read_file(sidecar));
    if (!(in >> target)) throw ParseError(1, "'" + sidecar + "' must hold the best-known energy");
    log << "target " << target << " from " << sidecar << "\n";
  }
  config.validate();
  const auto outcomes = run_trials(inst.model, config, target, opt.trials);
  const auto summary = summarize(outcomes, opt.bucket_edges);

  if (!opt.csv_path.empty()) {
    std::ostringstream csv;
    csv << "trial,seed,success,best_energy,time_to_best,elapsed,total_flips,first_algorithm,first_genop\n";
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const auto& t = outcomes[k];
      csv << k << ',' << t.seed << ',' << (t.success ? 1 : 0) << ',';
      if (t.best_energy != kEnergyInfinity) csv << t.best_energy;
      csv << ',' << t.time_to_best << ',' << t.elapsed << ',' << t.total_flips << ',';
      if (t.first_best_algorithm) csv << to_string(*t.first_best_algorithm);
      csv << ',';
      if (t.first_best_genop) csv << to_string(*t.first_best_genop);
      csv << '\n';
    }
    write_file(opt.csv_path, csv.str());
  }

  Json j;
  j["trials"] = summary.trials;
  j["successes"] = summary.successes;
  j["success_rate"] = summary.success_rate;
  j["target"] = target;
  j["mean_tts"] = summary.mean_tts ? Json(*summary.mean_tts) : Json(nullptr);
  Json hist = Json::array();
  for (const auto& b : summary.tts_histogram) {
    hist.push_back({{"lower", b.lower}, {"upper", b.upper ? Json(*b.upper) : Json(nullptr)}, {"count", b.count}});
  }
  j["histogram"] = hist;
  Json algs = Json::object();
  for (auto a : kAllMainAlgorithms) algs[std::string(to_string(a))] = summary.first_best_algorithm[static_cast<std::size_t>(a)];
  Json ops = Json::object();
  for (auto op : kAllGeneticOps) ops[std::string(to_string(op))] = summary.first_best_genop[static_cast<std::size_t>(op)];
  j["first_best"] = {{"algorithms", algs}, {"genops", ops}};
  out << j.dump() << "\n";
  return 0;
}

}  // namespace dabs::cli
