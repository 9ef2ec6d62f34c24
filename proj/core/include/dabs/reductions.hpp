#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dabs/model.hpp"

namespace dabs {

struct Edge {
  std::size_t u;
  std::size_t v;
  Energy w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph, edges stored with u < v and unique.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Gset format: `n m` then m lines `u v w`, 1-indexed. A missing weight
/// column reads as weight 1, so plain topology edge lists parse too.
WeightedGraph parse_gset(std::string_view text);
std::string write_gset(const WeightedGraph& g);

// ---- MaxCut ---------------------------------------------------------------

/// Each edge contributes w (2 x_u x_v - x_u - x_v), so E(X) = -cut(X).
QuboModel maxcut_to_qubo(const WeightedGraph& g);

struct CutResult {
  std::vector<std::size_t> side;  ///< nodes with x_i = 1, ascending
  Energy value = 0;
};

CutResult decode_cut(const WeightedGraph& g, const BitVector& x);

// ---- QAP ------------------------------------------------------------------

/// Quadratic assignment instance; flow(i, i') between facilities and
/// dist(j, j') between locations, both n x n row-major.
struct QapInstance {
  std::size_t n = 0;
  std::vector<Energy> flow;
  std::vector<Energy> dist;

  Energy flow_at(std::size_t i, std::size_t k) const { return flow[i * n + k]; }
  Energy dist_at(std::size_t j, std::size_t k) const { return dist[j * n + k]; }

  /// True when either matrix carries a nonzero diagonal entry; such entries
  /// are ignored by the reduction and by qap_cost.
  bool has_nonzero_diagonal() const;
};

/// QAPLIB format: `n`, then the flow matrix, then the distance matrix.
QapInstance parse_qaplib(std::string_view text);

/// C(g) = sum over i != i' of flow(i, i') * dist(g(i), g(i')).
Energy qap_cost(const QapInstance& q, const std::vector<std::size_t>& perm);

/// One-hot encoding on n^2 bits, bit <i, j> = i*n + j set iff facility i sits
/// at location j. For every feasible X, report_objective(model, X) = C(g_X).
QuboModel qap_to_qubo(const QapInstance& q, Energy penalty);

/// Smallest penalty of the form 1 + (bound on any assignment cost) that makes
/// every infeasible vector strictly worse than the best feasible one.
Energy default_penalty(const QapInstance& q);

struct QapSolution {
  std::vector<std::size_t> perm;  ///< perm[i] = location of facility i
  Energy cost = 0;
};

struct QapInfeasible {
  std::vector<std::size_t> bad_rows;     ///< facilities without exactly one location
  std::vector<std::size_t> bad_columns;  ///< locations without exactly one facility
};

std::variant<QapSolution, QapInfeasible> decode_qap(const QapInstance& q, const BitVector& x);

// ---- Quantum annealer simulation instances --------------------------------

/// Random Ising model on the topology of `g` (weights ignored). Couplings are
/// uniform over the nonzero integers of [-r, r], biases over the nonzero
/// integers of [-4r, 4r]. Deterministic in `seed`.
IsingModel gen_qasp(const WeightedGraph& g, std::int64_t resolution, std::uint64_t seed);

}  // namespace dabs
