#include "dabs/model.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "checked.hpp"
#include "dabs/error.hpp"

namespace dabs {

using detail::checked_abs;
using detail::checked_add;
using detail::checked_mul;

namespace {

void check_length(std::size_t n, const BitVector& x) {
  if (x.size() != n) {
    throw DimensionError("vector length " + std::to_string(x.size()) + " does not match model size " +
                         std::to_string(n));
  }
}

}  // namespace

QuboModel::QuboModel(std::size_t n, std::vector<QuboTerm> off_diag, std::vector<Energy> diag,
                     Energy offset)
    : n_(n), diag_(std::move(diag)), offset_(offset) {
  if (diag_.size() != n_) {
    throw DimensionError("diagonal has " + std::to_string(diag_.size()) + " entries, expected " +
                         std::to_string(n_));
  }
  std::erase_if(off_diag, [](const QuboTerm& t) { return t.w == 0; });
  for (const auto& t : off_diag) {
    if (t.i >= t.j || t.j >= n_) {
      throw DimensionError("term (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                           ") violates 0 <= i < j < n");
    }
  }
  std::sort(off_diag.begin(), off_diag.end(),
            [](const QuboTerm& a, const QuboTerm& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  for (std::size_t k = 1; k < off_diag.size(); ++k) {
    if (off_diag[k].i == off_diag[k - 1].i && off_diag[k].j == off_diag[k - 1].j) {
      throw Error("duplicate term (" + std::to_string(off_diag[k].i) + ", " +
                  std::to_string(off_diag[k].j) + ")");
    }
  }
  off_diag_ = std::move(off_diag);

  Energy bound = checked_abs(offset_, "offset");
  for (const auto& t : off_diag_) bound = checked_add(bound, checked_abs(t.w, "weight"), "energy bound");
  for (Energy d : diag_) bound = checked_add(bound, checked_abs(d, "weight"), "energy bound");
  bound_ = bound;

  std::vector<std::size_t> degree(n_, 0);
  for (const auto& t : off_diag_) {
    ++degree[t.i];
    ++degree[t.j];
  }
  row_start_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) row_start_[i + 1] = row_start_[i] + degree[i];
  adjacency_.resize(row_start_[n_]);
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (const auto& t : off_diag_) {
    adjacency_[fill[t.i]++] = {t.j, t.w};
    adjacency_[fill[t.j]++] = {t.i, t.w};
  }
}

void QuboBuilder::add_linear(std::size_t i, Energy w) {
  if (i >= n_) throw DimensionError("bit " + std::to_string(i) + " out of range");
  diag_[i] = checked_add(diag_[i], w, "diagonal");
}

void QuboBuilder::add_quadratic(std::size_t i, std::size_t j, Energy w) {
  if (i >= n_ || j >= n_ || i == j) {
    throw DimensionError("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") invalid");
  }
  if (i > j) std::swap(i, j);
  terms_.push_back({i, j, w});
}

void QuboBuilder::add_offset(Energy c) { offset_ = checked_add(offset_, c, "offset"); }

QuboModel QuboBuilder::build() && {
  std::sort(terms_.begin(), terms_.end(),
            [](const QuboTerm& a, const QuboTerm& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  std::vector<QuboTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().i == t.i && merged.back().j == t.j) {
      merged.back().w = checked_add(merged.back().w, t.w, "weight");
    } else {
      merged.push_back(t);
    }
  }
  return QuboModel(n_, std::move(merged), std::move(diag_), offset_);
}

IsingModel::IsingModel(std::size_t n, std::vector<IsingCoupling> couplings, std::vector<Energy> biases)
    : n_(n), biases_(std::move(biases)) {
  if (biases_.size() != n_) {
    throw DimensionError("bias vector has " + std::to_string(biases_.size()) + " entries, expected " +
                         std::to_string(n_));
  }
  for (const auto& c : couplings) {
    if (c.i >= c.j || c.j >= n_) {
      throw DimensionError("coupling (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                           ") violates 0 <= i < j < n");
    }
  }
  std::sort(couplings.begin(), couplings.end(), [](const IsingCoupling& a, const IsingCoupling& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t k = 1; k < couplings.size(); ++k) {
    if (couplings[k].i == couplings[k - 1].i && couplings[k].j == couplings[k - 1].j) {
      throw Error("duplicate coupling (" + std::to_string(couplings[k].i) + ", " +
                  std::to_string(couplings[k].j) + ")");
    }
  }
  couplings_ = std::move(couplings);
}

Energy energy_of(const QuboModel& model, const BitVector& x) {
  check_length(model.size(), x);
  Energy e = 0;
  for (const auto& t : model.off_diag()) {
    if (x[t.i] && x[t.j]) e += t.w;
  }
  const auto& diag = model.diag();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (x[i]) e += diag[i];
  }
  return e;
}

Energy report_objective(const QuboModel& model, const BitVector& x) {
  return energy_of(model, x) + model.offset();
}

Energy hamiltonian(const IsingModel& model, const BitVector& x) {
  check_length(model.size(), x);
  Energy h = 0;
  for (const auto& c : model.couplings()) h += (x[c.i] == x[c.j]) ? c.value : -c.value;
  const auto& b = model.biases();
  for (std::size_t i = 0; i < b.size(); ++i) h += x[i] ? b[i] : -b[i];
  return h;
}

// Substituting s = 2x - 1:
//   J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J
//   h s_i     = 2h x_i - h
QuboModel ising_to_qubo(const IsingModel& ising) {
  const std::size_t n = ising.size();
  std::vector<Energy> diag(n, 0);
  std::vector<QuboTerm> terms;
  terms.reserve(ising.couplings().size());
  Energy offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Energy h = ising.biases()[i];
    diag[i] = checked_add(diag[i], checked_mul(2, h, "bias"), "diagonal");
    offset = checked_add(offset, -h, "offset");
  }
  for (const auto& c : ising.couplings()) {
    const Energy two_j = checked_mul(2, c.value, "coupling");
    terms.push_back({c.i, c.j, checked_mul(4, c.value, "coupling")});
    diag[c.i] = checked_add(diag[c.i], -two_j, "diagonal");
    diag[c.j] = checked_add(diag[c.j], -two_j, "diagonal");
    offset = checked_add(offset, c.value, "offset");
  }
  return QuboModel(n, std::move(terms), std::move(diag), offset);
}

}  // namespace dabs
