#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "dabs/error.hpp"
#include "dabs/model.hpp"

namespace dabs {
namespace {

/// Splits instance text into non-empty, non-comment lines of tokens while
/// remembering each line's 1-based number.
struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    Line parsed{number, {}};
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      if (line[pos] == '#') break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      parsed.tokens.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
  }
  return lines;
}

template <class Int>
Int parse_int(const Line& line, std::size_t k, const char* field) {
  if (k >= line.tokens.size()) throw ParseError(line.number, std::string("missing ") + field);
  const auto tok = line.tokens[k];
  Int value{};
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || first == tok.data() + tok.size()) {
    throw ParseError(line.number, std::string("invalid ") + field + " '" + std::string(tok) + "'");
  }
  return value;
}

void expect_tokens(const Line& line, std::size_t count) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, "expected " + std::to_string(count) + " fields, found " +
                                      std::to_string(line.tokens.size()));
  }
}

struct Entry {
  std::size_t i;
  std::size_t j;
  Energy v;
};

struct Parsed {
  std::size_t n;
  Energy offset;
  std::vector<Entry> entries;
};

/// Shared reader for the `QUBO n m offset` / `ISING n m` formats. `m` counts
/// the off-diagonal (i < j) lines; diagonal lines `i i v` may appear in any
/// number on top of those.
Parsed parse_entries(std::string_view text, std::string_view keyword, bool has_offset) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty input, expected '" + std::string(keyword) + "' header");
  const Line& header = lines.front();
  expect_tokens(header, has_offset ? 4 : 3);
  if (header.tokens[0] != keyword) {
    throw ParseError(header.number, "expected '" + std::string(keyword) + "' header");
  }
  Parsed out;
  out.n = parse_int<std::size_t>(header, 1, "bit count");
  const auto m = parse_int<std::size_t>(header, 2, "entry count");
  out.offset = has_offset ? parse_int<Energy>(header, 3, "offset") : 0;

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t off_diagonal = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    expect_tokens(line, 3);
    const auto i = parse_int<std::size_t>(line, 0, "index");
    const auto j = parse_int<std::size_t>(line, 1, "index");
    const auto v = parse_int<Energy>(line, 2, "weight");
    if (i > j) throw ParseError(line.number, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") has i > j");
    if (j >= out.n) throw ParseError(line.number, "index " + std::to_string(j) + " out of range");
    if (!seen.emplace(i, j).second) {
      throw ParseError(line.number, "duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    out.entries.push_back({i, j, v});
    if (i != j) ++off_diagonal;
  }
  if (off_diagonal != m) {
    throw ParseError(lines.back().number, "header announces " + std::to_string(m) +
                                              " off-diagonal entries, found " + std::to_string(off_diagonal));
  }
  return out;
}

}  // namespace

QuboModel parse_qubo(std::string_view text) {
  auto parsed = parse_entries(text, "QUBO", true);
  std::vector<Energy> diag(parsed.n, 0);
  std::vector<QuboTerm> terms;
  for (const auto& e : parsed.entries) {
    if (e.i == e.j) diag[e.i] = e.v;
    else terms.push_back({e.i, e.j, e.v});
  }
  return QuboModel(parsed.n, std::move(terms), std::move(diag), parsed.offset);
}

std::string write_qubo(const QuboModel& model) {
  // Canonical order: row by row, the diagonal entry before the row's
  // off-diagonal entries.
  std::ostringstream body;
  std::size_t m = 0;
  const auto& terms = model.off_diag();
  std::size_t t = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.diag()[i] != 0) {
      body << i << ' ' << i << ' ' << model.diag()[i] << '\n';
    }
    for (; t < terms.size() && terms[t].i == i; ++t) {
      body << terms[t].i << ' ' << terms[t].j << ' ' << terms[t].w << '\n';
      ++m;
    }
  }
  return "QUBO " + std::to_string(model.size()) + ' ' + std::to_string(m) + ' ' +
         std::to_string(model.offset()) + '\n' + body.str();
}

IsingModel parse_ising(std::string_view text) {
  auto parsed = parse_entries(text, "ISING", false);
  std::vector<Energy> biases(parsed.n, 0);
  std::vector<IsingCoupling> couplings;
  for (const auto& e : parsed.entries) {
    if (e.i == e.j) biases[e.i] = e.v;
    else couplings.push_back({e.i, e.j, e.v});
  }
  return IsingModel(parsed.n, std::move(couplings), std::move(biases));
}

std::string write_ising(const IsingModel& model) {
  std::ostringstream body;
  std::size_t m = 0;
  const auto& cs = model.couplings();
  std::size_t c = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.biases()[i] != 0) {
      body << i << ' ' << i << ' ' << model.biases()[i] << '\n';
    }
    for (; c < cs.size() && cs[c].i == i; ++c) {
      body << cs[c].i << ' ' << cs[c].j << ' ' << cs[c].value << '\n';
      ++m;
    }
  }
  return "ISING " + std::to_string(model.size()) + ' ' + std::to_string(m) + '\n' + body.str();
}

}  // namespace dabs
