#include "dabs/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>

#include "checked.hpp"
#include "dabs/error.hpp"
#include "dabs/random.hpp"

namespace dabs {

using detail::checked_add;
using detail::checked_mul;

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> integer_tokens(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
    } else if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      out.push_back({text.substr(pos, end - pos), line});
      pos = end;
    }
  }
  return out;
}

Energy to_integer(const Token& t, const char* field) {
  Energy v{};
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError(t.line, std::string("invalid ") + field + " '" + std::string(t.text) + "'");
  }
  return v;
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v || e.v >= n_) {
      throw DimensionError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                           ") violates 0 <= u < v < n");
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v) {
      throw Error("duplicate edge (" + std::to_string(edges[k].u) + ", " + std::to_string(edges[k].v) + ")");
    }
  }
  edges_ = std::move(edges);
}

WeightedGraph parse_gset(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  {
    const auto tokens = integer_tokens(text);
    for (const auto& t : tokens) {
      if (lines.empty() || lines.back().front().line != t.line) lines.emplace_back();
      lines.back().push_back(t);
    }
  }
  if (lines.empty()) throw ParseError(0, "empty graph file");
  const auto& header = lines.front();
  if (header.size() != 2) throw ParseError(header.front().line, "expected header '<n> <m>'");
  const Energy n = to_integer(header[0], "node count");
  const Energy m = to_integer(header[1], "edge count");
  if (n < 0 || m < 0) throw ParseError(header.front().line, "negative count in header");
  if (static_cast<Energy>(lines.size()) - 1 != m) {
    throw ParseError(lines.back().front().line, "header announces " + std::to_string(m) + " edges, found " +
                                                    std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const std::size_t at = line.front().line;
    if (line.size() != 2 && line.size() != 3) throw ParseError(at, "expected '<u> <v> [w]'");
    const Energy u = to_integer(line[0], "node");
    const Energy v = to_integer(line[1], "node");
    const Energy w = line.size() == 3 ? to_integer(line[2], "weight") : 1;
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError(at, "node index out of range 1.." + std::to_string(n));
    if (u == v) throw ParseError(at, "self loop");
    edges.push_back({static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1), w});
  }
  try {
    return WeightedGraph(static_cast<std::size_t>(n), std::move(edges));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_gset(const WeightedGraph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edges().size() << '\n';
  for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
  return out.str();
}

QuboModel maxcut_to_qubo(const WeightedGraph& g) {
  QuboBuilder b(g.size());
  for (const auto& e : g.edges()) {
    b.add_quadratic(e.u, e.v, checked_mul(2, e.w, "edge weight"));
    b.add_linear(e.u, -e.w);
    b.add_linear(e.v, -e.w);
  }
  return std::move(b).build();
}

CutResult decode_cut(const WeightedGraph& g, const BitVector& x) {
  if (x.size() != g.size()) throw DimensionError("decode_cut: vector length does not match node count");
  CutResult r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) r.side.push_back(i);
  }
  for (const auto& e : g.edges()) {
    if (x[e.u] != x[e.v]) r.value += e.w;
  }
  return r;
}

bool QapInstance::has_nonzero_diagonal() const {
  for (std::size_t i = 0; i < n; ++i) {
    if (flow_at(i, i) != 0 || dist_at(i, i) != 0) return true;
  }
  return false;
}

QapInstance parse_qaplib(std::string_view text) {
  const auto tokens = integer_tokens(text);
  if (tokens.empty()) throw ParseError(0, "empty QAPLIB file");
  const Energy n = to_integer(tokens[0], "size");
  if (n < 0) throw ParseError(tokens[0].line, "negative size");
  QapInstance q;
  q.n = static_cast<std::size_t>(n);
  const std::size_t cells = q.n * q.n;
  if (tokens.size() != 1 + 2 * cells) {
    const std::size_t at = tokens.size() > 1 + 2 * cells ? tokens[1 + 2 * cells].line : 0;
    throw ParseError(at, "expected " + std::to_string(2 * cells) + " matrix entries, found " +
                             std::to_string(tokens.size() - 1));
  }
  q.flow.resize(cells);
  q.dist.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    q.flow[k] = to_integer(tokens[1 + k], "flow");
    q.dist[k] = to_integer(tokens[1 + cells + k], "distance");
    if (q.flow[k] < 0) throw ParseError(tokens[1 + k].line, "negative flow");
    if (q.dist[k] < 0) throw ParseError(tokens[1 + cells + k].line, "negative distance");
  }
  return q;
}

namespace {

void check_qap(const QapInstance& q) {
  if (q.flow.size() != q.n * q.n || q.dist.size() != q.n * q.n) {
    throw DimensionError("QAP matrices must be n x n");
  }
}

}  // namespace

Energy qap_cost(const QapInstance& q, const std::vector<std::size_t>& perm) {
  check_qap(q);
  if (perm.size() != q.n) throw DimensionError("qap_cost: permutation length does not match n");
  Energy c = 0;
  for (std::size_t i = 0; i < q.n; ++i) {
    for (std::size_t k = 0; k < q.n; ++k) {
      if (i != k) c += q.flow_at(i, k) * q.dist_at(perm[i], perm[k]);
    }
  }
  return c;
}

QuboModel qap_to_qubo(const QapInstance& q, Energy penalty) {
  check_qap(q);
  if (penalty <= 0) throw ConfigError("QAP penalty must be positive");
  const std::size_t n = q.n;
  QuboBuilder b(n * n);
  const auto bit = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t a = bit(i, j);
      b.add_linear(a, -penalty);
      for (std::size_t i2 = i; i2 < n; ++i2) {
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          const std::size_t c = bit(i2, j2);
          if (c <= a) continue;
          const bool same_row = i == i2;
          const bool same_col = j == j2;
          if (same_row != same_col) {
            b.add_quadratic(a, c, penalty);
          } else if (!same_row) {
            // The upper-triangular term carries both directed flows.
            const Energy w = checked_add(checked_mul(q.flow_at(i, i2), q.dist_at(j, j2), "QAP weight"),
                                         checked_mul(q.flow_at(i2, i), q.dist_at(j2, j), "QAP weight"),
                                         "QAP weight");
            if (w != 0) b.add_quadratic(a, c, w);
          }
        }
      }
    }
  }
  b.add_offset(checked_mul(static_cast<Energy>(n), penalty, "QAP offset"));
  return std::move(b).build();
}

Energy default_penalty(const QapInstance& q) {
  check_qap(q);
  Energy flow_sum = 0;
  Energy max_dist = 0;
  for (std::size_t i = 0; i < q.n; ++i) {
    for (std::size_t k = 0; k < q.n; ++k) {
      if (i == k) continue;
      flow_sum = checked_add(flow_sum, q.flow_at(i, k), "penalty");
      max_dist = std::max(max_dist, q.dist_at(i, k));
    }
  }
  return checked_add(1, checked_mul(flow_sum, max_dist, "penalty"), "penalty");
}

std::variant<QapSolution, QapInfeasible> decode_qap(const QapInstance& q, const BitVector& x) {
  const std::size_t n = q.n;
  if (x.size() != n * n) throw DimensionError("decode_qap: vector length must be n^2");
  std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
  std::vector<std::size_t> perm(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x[i * n + j]) {
        ++row_count[i];
        ++col_count[j];
        perm[i] = j;
      }
    }
  }
  QapInfeasible bad;
  for (std::size_t k = 0; k < n; ++k) {
    if (row_count[k] != 1) bad.bad_rows.push_back(k);
    if (col_count[k] != 1) bad.bad_columns.push_back(k);
  }
  if (!bad.bad_rows.empty() || !bad.bad_columns.empty()) return bad;
  QapSolution sol;
  sol.cost = qap_cost(q, perm);
  sol.perm = std::move(perm);
  return sol;
}

IsingModel gen_qasp(const WeightedGraph& g, std::int64_t resolution, std::uint64_t seed) {
  if (resolution < 1) throw ConfigError("resolution must be >= 1");
  Xorshift64 rng(derive_seed(seed, 0, 0x51A5));
  const auto nonzero = [&rng](std::int64_t r) {
    const auto k = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * r)));
    return k < r ? k - r : k - r + 1;
  };
  std::vector<IsingCoupling> couplings;
  couplings.reserve(g.edges().size());
  for (const auto& e : g.edges()) couplings.push_back({e.u, e.v, nonzero(resolution)});
  std::vector<Energy> biases(g.size());
  for (auto& h : biases) h = nonzero(4 * resolution);
  return IsingModel(g.size(), std::move(couplings), std::move(biases));
}

}  // namespace dabs
