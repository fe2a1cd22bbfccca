#pragma once

#include "hsc/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hsc {

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;
  void set_labels(std::vector<std::string> labels);

  // Sets [e_i, e_j] = v and [e_j, e_i] = -v. Callers wanting to test
  // validation with inconsistent data use set_raw.
  void set_bracket(Index i, Index j, const SparseVec& v);
  void set_raw(Index i, Index j, const SparseVec& v) { table_[i * dim_ + j] = v; }
  const SparseVec& bracket(Index i, Index j) const { return table_[i * dim_ + j]; }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
  RationalMatrix ad(const SparseVec& x) const;

  bool operator==(const LieAlgebra& o) const { return dim_ == o.dim_ && table_ == o.table_; }

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVec> table_;
  std::vector<std::string> labels_;
};

ValidationReport validate_algebra(const LieAlgebra& g);

// Structure constants in a new basis (columns of P in old coordinates).
LieAlgebra change_basis(const LieAlgebra& g, const std::vector<SparseVec>& basis, std::vector<std::string> labels = {});
// Subalgebra spanned by the given independent vectors; throws if not closed.
LieAlgebra subalgebra(const LieAlgebra& g, const std::vector<SparseVec>& basis, std::vector<std::string> labels = {});
LieAlgebra direct_product(const LieAlgebra& a, const LieAlgebra& b);
// Lie algebra spanned by matrices under the commutator; throws if not closed.
LieAlgebra lie_algebra_from_matrices(const std::vector<RationalMatrix>& mats, std::vector<std::string> labels = {});

bool is_subalgebra(const LieAlgebra& g, const Subspace& s);
bool is_ideal(const LieAlgebra& g, const Subspace& s);

struct LieModule {
  std::size_t dim = 0;
  std::vector<RationalMatrix> action;  // one per basis vector of g

  RationalMatrix act(const SparseVec& x) const;
};

LieModule trivial_module(const LieAlgebra& g, std::size_t dim = 1);
LieModule adjoint_module(const LieAlgebra& g);
ValidationReport validate_module(const LieAlgebra& g, const LieModule& m);
// The same module seen through a new basis of g.
LieModule transport_module(const LieModule& m, const std::vector<SparseVec>& basis);

// Bilinear map M ⊗ N → P, stored as table[m * dim_n + n].
struct ModulePairing {
  std::size_t dim_m = 0, dim_n = 0, dim_p = 0;
  std::vector<SparseVec> table;

  static ModulePairing scalar();  // 1 ⊗ 1 → 1
  const SparseVec& at(Index m, Index n) const { return table[m * dim_n + n]; }
  SparseVec apply(const SparseVec& m, const SparseVec& n) const;
};

ValidationReport validate_pairing(const LieAlgebra& g, const LieModule& m, const LieModule& n, const LieModule& p,
                                  const ModulePairing& pairing);

// Adapted basis of g: J_k, I_k, J_L, I_L, in that order. The k-part is a
// prefix; non-k indices list J_L before I_L.
struct Frame {
  std::size_t n_jk = 0, n_ik = 0, n_jl = 0, n_il = 0;
  std::vector<SparseVec> basis;  // in original coordinates
  LieAlgebra algebra;            // structure constants in the adapted basis
  CoordinateSystem coords;

  std::size_t k_dim() const { return n_jk + n_ik; }
  std::size_t jl_begin() const { return n_jk + n_ik; }
  std::size_t il_begin() const { return n_jk + n_ik + n_jl; }
  std::size_t dim() const { return basis.size(); }
  bool in_ideal(std::size_t i) const { return (i >= n_jk && i < n_jk + n_ik) || i >= il_begin(); }
};

struct TripleData {
  LieAlgebra g;
  Subspace k, ideal, i_k, complement_J;
  RationalMatrix pi;  // g → I ⊂ g, original coordinates
  Frame frame;
};

TripleData build_triple(const LieAlgebra& g, const std::vector<SparseVec>& k_basis,
                        const std::vector<SparseVec>& ideal_basis);
// Same, with a caller-chosen projection (validated, not solved for).
TripleData build_triple_with_projection(const LieAlgebra& g, const std::vector<SparseVec>& k_basis,
                                        const std::vector<SparseVec>& ideal_basis, const RationalMatrix& pi);

// Affine solution set of the projection system: particular + span(homogeneous).
struct ProjectionSolutions {
  RationalMatrix particular;
  std::vector<RationalMatrix> homogeneous;
};
ProjectionSolutions projection_solutions(const LieAlgebra& g, const Subspace& k, const Subspace& ideal);
// (x*, x⁺) with x* = π(x) ∈ I and x⁺ ∈ J.
std::pair<SparseVec, SparseVec> project_star(const TripleData& t, const SparseVec& x);
ValidationReport validate_triple(const TripleData& t);

}  // namespace hsc
