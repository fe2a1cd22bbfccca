#pragma once

#include "hsc/hs.hpp"
#include "hsc/roots.hpp"

namespace hsc {

std::string format_set(const std::set<int>& s);  // "[1, 2]"

// Parabolic p ⊇ b given by the simple roots of its Levi factor.
struct ParabolicDatum {
  RootDatum rd;
  std::set<int> levi;  // 1-based labels of rd
  int m = 0;           // rank - |levi|
  // Numbering with the Levi roots last: relabel[i-1] is the new label of root i.
  std::vector<int> relabel;

  // Positive roots (indices into rd.positive) with support inside / not inside M.
  std::vector<std::size_t> roots_in(const std::set<int>& M) const;
  std::vector<std::size_t> roots_outside(const std::set<int>& M) const;
};

ParabolicDatum make_parabolic(const RootDatum& rd, const std::set<int>& levi);

// g_K = l_{K,Δ} + ũ_K inside g × g, with k = l_Δ and ideal ũ_K.
struct BKInstance {
  ParabolicDatum pd;
  std::set<int> t_support, K;
  LieAlgebra gxg;
  // Basis of g_K in g×g coordinates: diagonal Cartan, diagonal root vectors of
  // l_K (e, f pairs), then u_{K,-} × 0 and 0 × u_{K,+}.
  std::vector<SparseVec> gk_basis;
  Subspace l_K_delta, u_tilde, l_delta;  // in g×g coordinates
  LieAlgebra gk;                         // structure constants in gk_basis
  std::vector<Index> k_indices, ideal_indices, levi_K_indices;  // into gk_basis
  TripleData triple;

  std::string name() const;  // "A2 levi=[] t=[1]"
};

// t_support: labels of rd, disjoint from the Levi set.
BKInstance build_bk_instance(const ParabolicDatum& pd, const std::set<int>& t_support);

HochschildSerre bk_spectral(const BKInstance& b, int jobs = 1);
CohomologyRing bk_cohomology(const BKInstance& b);

struct BKCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BKReport {
  std::string instance;
  std::vector<std::size_t> betti;
  std::size_t total = 0;
  int degeneration_page = -1, first_degenerate_page = -1;
  WeylCounts weyl;
  std::vector<std::size_t> sub_dims;          // image of H(l_K, l) in H(g_K, l_Δ)
  std::vector<std::size_t> sub_independent;   // H(l_K, l) computed inside g
  std::vector<std::size_t> quotient_dims;     // H / (A⁺)
  std::vector<std::size_t> invariant_dims;    // H(ũ_K)^{l_K}
  std::vector<std::size_t> ker_i_star_dims;
  std::vector<std::vector<std::size_t>> e2_dims, einf_dims;  // [p][q]
  std::vector<BKCheck> checks;

  bool ok() const;
};

BKReport verify_structure(const BKInstance& b, const HochschildSerre& hs);

struct KostantRow {
  std::set<int> K;
  std::vector<std::size_t> invariant_dims;  // by cohomological degree
  std::size_t total = 0, expected = 0;      // expected = |W / W_{P_K}|
  std::vector<std::size_t> by_length;       // coset counts of W / W_{P_K}
  bool total_ok = false;
  bool per_degree_match = false;            // advisory: degree 2l vs length l
};

// l_K-invariants in H(ũ_K), computed directly from cochains of ũ_K.
KostantRow kostant_table(const ParabolicDatum& pd, const std::set<int>& K);
std::vector<std::size_t> kostant_invariants(const BKInstance& b);

// Polynomial product of graded dimension vectors.
std::vector<std::size_t> poly_product(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace hsc
