#pragma once

#include "hsc/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hsc {

using Index = std::uint32_t;

// Sorted (index, value) pairs, no explicit zeros.
struct SparseVec {
  std::vector<std::pair<Index, Rational>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t nnz() const { return entries.size(); }
  Rational at(Index i) const;
  void push(Index i, Rational v) {
    if (sgn(v) != 0) entries.emplace_back(i, std::move(v));
  }
  Index leading() const { return entries.front().first; }
  bool operator==(const SparseVec& o) const { return entries == o.entries; }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }
};

SparseVec unit_vec(Index i);
SparseVec scaled(const SparseVec& v, const Rational& c);
SparseVec add(const SparseVec& a, const SparseVec& b);
SparseVec axpy(const SparseVec& x, const Rational& c, const SparseVec& y);  // x + c*y
SparseVec negate(const SparseVec& v);
Rational dot(const SparseVec& a, const SparseVec& b);
SparseVec from_dense(const std::vector<Rational>& d);
std::vector<Rational> to_dense(const SparseVec& v, std::size_t n);

// Sum of c_i * v_i; terms gathered then merged once.
SparseVec combine(const std::vector<std::pair<Rational, const SparseVec*>>& terms, std::size_t dim_hint = 0);

struct Triplet {
  Index row, col;
  Rational value;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t);
  static RationalMatrix from_columns(std::size_t rows, const std::vector<SparseVec>& cols);
  static RationalMatrix from_rows(std::size_t cols, const std::vector<SparseVec>& rows);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  Rational at(std::size_t r, std::size_t c) const;
  const SparseVec& row(std::size_t r) const { return row_data_[r]; }
  const SparseVec& col(std::size_t c) const { return col_data_[c]; }
  bool is_zero() const { return nnz() == 0; }

  SparseVec apply(const SparseVec& x) const;
  RationalMatrix transpose() const;
  std::vector<Triplet> triplets() const;
  std::vector<std::vector<Rational>> dense() const;

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_data_ == o.row_data_;
  }
  bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> row_data_;
  std::vector<SparseVec> col_data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix scaled(const RationalMatrix& a, const Rational& c);
RationalMatrix vstack(const std::vector<const RationalMatrix*>& blocks);
// I_n ⊗ A, block diagonal.
RationalMatrix block_diagonal(std::size_t n, const RationalMatrix& a);
std::string to_string(const RationalMatrix& m);

// Below this many columns, elimination accumulates in a dense buffer.
std::size_t dense_threshold();
void set_dense_threshold(std::size_t cols);

// Incremental fully reduced echelon form: every row has leading entry 1
// and is zero at every other row's pivot.
class Echelon {
 public:
  explicit Echelon(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  // Reduce v to zero at every pivot.
  SparseVec reduce(const SparseVec& v) const;
  // Returns true if v was independent of the current rows.
  bool insert(const SparseVec& v);
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  // Position of pivot column c among rows, or -1.
  long pivot_slot(Index c) const;

 private:
  std::size_t dim_;
  std::vector<SparseVec> rows_;  // sorted by pivot
  std::vector<Index> pivots_;
};

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ech_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vectors);
  static Subspace full(std::size_t ambient);
  static Subspace coordinate(std::size_t ambient, const std::vector<Index>& indices);

  std::size_t ambient() const { return ech_.dim(); }
  std::size_t dim() const { return ech_.rank(); }
  const std::vector<SparseVec>& basis() const { return ech_.rows(); }
  const std::vector<Index>& pivots() const { return ech_.pivots(); }
  SparseVec reduce(const SparseVec& v) const { return ech_.reduce(v); }
  bool contains(const SparseVec& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in basis(); throws if v is not in the subspace.
  SparseVec coords(const SparseVec& v) const;
  SparseVec from_coords(const SparseVec& c) const;
  RationalMatrix basis_matrix() const;  // ambient × dim, columns are the basis
  // Matrix of coords(): dim × ambient, valid on members only.
  RationalMatrix coord_matrix() const;

  bool operator==(const Subspace& o) const {
    return ambient() == o.ambient() && basis() == o.basis();
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Echelon ech_;
};

Subspace kernel_basis(const RationalMatrix& a);
Subspace image(const RationalMatrix& a);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
// {x : A x ∈ s}
Subspace preimage(const RationalMatrix& a, const Subspace& s);
Subspace image_of(const RationalMatrix& a, const Subspace& s);
std::size_t rank(const RationalMatrix& a);
// A x = b with free variables set to zero, or nothing if inconsistent.
std::optional<SparseVec> solve(const RationalMatrix& a, const SparseVec& b);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

// Coordinates with respect to an arbitrary independent list of vectors.
class CoordinateSystem {
 public:
  CoordinateSystem() = default;
  CoordinateSystem(std::size_t ambient, std::vector<SparseVec> vectors);
  std::size_t size() const { return vectors_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<SparseVec>& vectors() const { return vectors_; }
  std::optional<SparseVec> try_coords(const SparseVec& v) const;
  SparseVec coords(const SparseVec& v) const;
  SparseVec vector_of(const SparseVec& c) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec> vectors_;
  Echelon aug_;
};

class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(Subspace top, Subspace bottom);

  std::size_t ambient() const { return top_.ambient(); }
  std::size_t dim() const { return reps_.size(); }
  const Subspace& top() const { return top_; }
  const Subspace& bottom() const { return bottom_; }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  bool in_top(const SparseVec& v) const { return top_.contains(v); }
  // Class coordinates; throws if v ∉ top.
  SparseVec class_coords(const SparseVec& v) const;
  std::optional<SparseVec> try_class_coords(const SparseVec& v) const;

 private:
  Subspace top_, bottom_;
  Echelon bottom_in_top_;
  std::vector<Index> free_;  // top-coordinate indices not pivots of bottom
  std::vector<SparseVec> reps_;
};

// Matrix (dst.dim × src.dim) of the map induced by f.
RationalMatrix induced_map(const RationalMatrix& f, const Subquotient& src, const Subquotient& dst);

}  // namespace hsc
