#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dabs/types.hpp"

namespace dabs {

/// Off-diagonal QUBO weight W(i, j) with i < j.
struct QuboTerm {
  std::size_t i;
  std::size_t j;
  Energy w;

  friend bool operator==(const QuboTerm&, const QuboTerm&) = default;
};

struct Neighbor {
  std::size_t bit;
  Energy w;
};

/// Immutable QUBO instance
///
///   E(X) = sum_{i<j} W(i,j) x_i x_j + sum_i W(i,i) x_i
///
/// stored as an upper-triangular term list plus a diagonal. The constant
/// `offset` is not part of E(X); it maps the energy back to the objective of
/// the problem the model was derived from (see report_objective).
///
/// Construction canonicalises the terms (sorted by (i, j), zero weights
/// dropped), rejects duplicates and out-of-range indices, and throws
/// CapacityError if sum|W| + |offset| does not fit in 63 bits, which bounds
/// every energy and every flip gain the search can compute.
class QuboModel {
 public:
  QuboModel() = default;
  QuboModel(std::size_t n, std::vector<QuboTerm> off_diag, std::vector<Energy> diag,
            Energy offset = 0);

  std::size_t size() const noexcept { return n_; }
  const std::vector<QuboTerm>& off_diag() const noexcept { return off_diag_; }
  const std::vector<Energy>& diag() const noexcept { return diag_; }
  Energy offset() const noexcept { return offset_; }

  /// Symmetric adjacency of `bit`: every (other, w) with W(bit, other) != 0.
  std::span<const Neighbor> neighbors(std::size_t bit) const noexcept {
    return {adjacency_.data() + row_start_[bit], adjacency_.data() + row_start_[bit + 1]};
  }

  /// sum |W| + |offset|; an upper bound on |E(X)| + |offset| for every X.
  Energy magnitude_bound() const noexcept { return bound_; }

  friend bool operator==(const QuboModel& a, const QuboModel& b) {
    return a.n_ == b.n_ && a.offset_ == b.offset_ && a.diag_ == b.diag_ &&
           a.off_diag_ == b.off_diag_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<QuboTerm> off_diag_;
  std::vector<Energy> diag_;
  Energy offset_ = 0;
  Energy bound_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<Neighbor> adjacency_;
};

/// Accumulates QUBO coefficients in any order, summing repeated (i, j)
/// contributions. Used by the problem reductions.
class QuboBuilder {
 public:
  explicit QuboBuilder(std::size_t n) : n_(n), diag_(n, 0) {}

  std::size_t size() const noexcept { return n_; }
  void add_linear(std::size_t i, Energy w);
  /// i != j in any order.
  void add_quadratic(std::size_t i, std::size_t j, Energy w);
  void add_offset(Energy c);

  QuboModel build() &&;

 private:
  std::size_t n_;
  std::vector<Energy> diag_;
  std::vector<QuboTerm> terms_;
  Energy offset_ = 0;
};

struct IsingCoupling {
  std::size_t i;
  std::size_t j;
  Energy value;

  friend bool operator==(const IsingCoupling&, const IsingCoupling&) = default;
};

/// Ising instance H(S) = sum J(i,j) s_i s_j + sum h_i s_i, s_i in {-1,+1}.
/// Couplings are kept sorted with i < j and unique.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(std::size_t n, std::vector<IsingCoupling> couplings, std::vector<Energy> biases);

  std::size_t size() const noexcept { return n_; }
  const std::vector<IsingCoupling>& couplings() const noexcept { return couplings_; }
  const std::vector<Energy>& biases() const noexcept { return biases_; }

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<IsingCoupling> couplings_;
  std::vector<Energy> biases_;
};

/// E(X) without the offset. Throws DimensionError on a length mismatch.
Energy energy_of(const QuboModel& model, const BitVector& x);

/// E(X) + offset: the objective of the source problem.
Energy report_objective(const QuboModel& model, const BitVector& x);

/// H(S) with spins given as bits under s = 2x - 1.
Energy hamiltonian(const IsingModel& model, const BitVector& x);

/// Equivalent QUBO with energy_of(out, X) + out.offset() == H(2X - 1).
QuboModel ising_to_qubo(const IsingModel& ising);

// Text formats. Writers emit the canonical form; parsers throw ParseError.
QuboModel parse_qubo(std::string_view text);
std::string write_qubo(const QuboModel& model);
IsingModel parse_ising(std::string_view text);
std::string write_ising(const IsingModel& model);

}  // namespace dabs
