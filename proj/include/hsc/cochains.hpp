#pragma once

#include "hsc/lie.hpp"

#include <bit>
#include <map>
#include <memory>
#include <optional>
#include <tuple>

namespace hsc {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline int parity_sign(int k) { return (k & 1) ? -1 : 1; }
// Number of set bits of m strictly below position p.
inline int count_below(Mask m, int p) { return popcount(m & ((Mask(1) << p) - 1)); }

// n-subsets of {0..m-1} as bitmasks, in colexicographic order.
class SubsetIndex {
 public:
  explicit SubsetIndex(std::size_t m = 0);
  std::size_t size() const { return m_; }
  std::size_t count(int n) const;
  std::size_t rank(Mask s) const;
  const std::vector<Mask>& subsets(int n) const { return lists_.at(n); }

 private:
  std::size_t m_;
  std::vector<std::vector<std::size_t>> binom_;
  std::vector<std::vector<Mask>> lists_;
};

struct Cochain {
  int degree = 0;
  SparseVec coeffs;
};

// Alternating maps Λ^n(span of domain) → M. Coordinates: rank(tuple) * dim M + m.
// Brackets are projected onto the domain, which is exact for cochains that
// vanish on the complementary basis vectors.
class CochainSpace {
 public:
  CochainSpace() = default;
  CochainSpace(std::shared_ptr<const LieAlgebra> g, std::vector<Index> domain, std::shared_ptr<const LieModule> m);
  CochainSpace(const LieAlgebra& g, std::vector<Index> domain, const LieModule& m);
  // Absolute complex: all of g.
  CochainSpace(const LieAlgebra& g, const LieModule& m);

  const LieAlgebra& algebra() const { return *g_; }
  const LieModule& module() const { return *m_; }
  const std::vector<Index>& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  std::size_t module_dim() const { return m_->dim; }
  std::size_t dim(int n) const;
  const SubsetIndex& subsets() const { return subsets_; }

  std::size_t coord(Mask tuple, Index m) const { return subsets_.rank(tuple) * module_dim() + m; }
  Mask tuple_at(int n, std::size_t coord) const { return subsets_.subsets(n)[coord / module_dim()]; }
  // Sorts algebra indices into a tuple mask; sign of the sort, or 0 on repeats
  // or indices outside the domain.
  std::pair<int, Mask> tuple_of(const std::vector<Index>& algebra_indices) const;

  RationalMatrix differential(int n) const;
  RationalMatrix theta(const SparseVec& z, int n) const;
  RationalMatrix iota(const SparseVec& z, int n) const;  // degree n → n-1

  Cochain differential(const Cochain& c) const { return {c.degree + 1, differential(c.degree).apply(c.coeffs)}; }
  Cochain theta(const SparseVec& z, const Cochain& c) const { return {c.degree, theta(z, c.degree).apply(c.coeffs)}; }
  Cochain iota(const SparseVec& z, const Cochain& c) const;

  // Value of c on a tuple of algebra indices (alternating extension).
  SparseVec evaluate(const Cochain& c, const std::vector<Index>& args) const;
  // Adds value ⊗ (dual of the tuple) to c.
  void add_value(Cochain& c, const std::vector<Index>& args, const SparseVec& value) const;

 private:
  int pos(Index algebra_index) const { return pos_[algebra_index]; }

  std::shared_ptr<const LieAlgebra> g_;
  std::shared_ptr<const LieModule> m_;
  std::vector<Index> domain_;
  std::vector<int> pos_;
  SubsetIndex subsets_;
};

// Signed shuffle product; a, b, result on spaces sharing one domain.
SparseVec cup(const CochainSpace& sa, int p, const SparseVec& a, const CochainSpace& sb, int q, const SparseVec& b,
              const ModulePairing& pairing, const CochainSpace& sc);

// C^n(g,k;M) for an algebra whose first k_dim basis vectors span k.
// Stored in the coordinates of Λ^n of the remaining basis vectors.
class RelativeComplex {
 public:
  RelativeComplex() = default;
  RelativeComplex(const LieAlgebra& g, std::size_t k_dim, const LieModule& m, bool check_square = true);

  const CochainSpace& space() const { return space_; }
  std::size_t k_dim() const { return k_dim_; }
  int top_degree() const { return static_cast<int>(space_.domain_size()); }
  std::size_t dim(int n) const { return valid(n) ? rel_[n].dim() : 0; }
  const Subspace& relative(int n) const { return rel_.at(n); }
  // Differential in relative coordinates, degree n → n+1.
  const RationalMatrix& d(int n) const { return d_.at(n); }
  SparseVec embed(int n, const SparseVec& rel) const { return rel_.at(n).from_coords(rel); }
  SparseVec restrict_to(int n, const SparseVec& full) const { return rel_.at(n).coords(full); }
  std::optional<SparseVec> try_restrict(int n, const SparseVec& full) const;
  bool valid(int n) const { return n >= 0 && n <= top_degree(); }
  // Relative cup product with M ⊗ M → M.
  SparseVec cup(int p, const SparseVec& a, int q, const SparseVec& b, const ModulePairing& pairing) const;

 private:
  std::size_t k_dim_ = 0;
  CochainSpace space_;
  std::vector<Subspace> rel_;
  std::vector<RationalMatrix> d_;
};

RelativeComplex relative_complex(const TripleData& t, const LieModule& m);
// Pair (g, k) without an ideal.
RelativeComplex relative_complex(const LieAlgebra& g, const std::vector<SparseVec>& k_basis, const LieModule& m);

struct CohomologyRing {
  std::vector<Subspace> cocycles, coboundaries;  // relative coordinates
  std::vector<Subquotient> classes;
  std::vector<std::size_t> betti;
  bool has_products = false;
  // (p, i, q, j) → class coordinates of [rep_i][rep_j] in degree p+q
  std::map<std::tuple<int, std::size_t, int, std::size_t>, SparseVec> products;

  std::size_t total_dim() const;
  const std::vector<SparseVec>& representatives(int n) const { return classes.at(n).representatives(); }
  SparseVec product(int p, const SparseVec& a, int q, const SparseVec& b) const;  // class coords
};

CohomologyRing cohomology(const RelativeComplex& c, const ModulePairing* pairing = nullptr);

}  // namespace hsc
