#pragma once

#include "hsc/spectral.hpp"

#include <memory>
#include <optional>

namespace hsc {

// The Hochschild-Serre spectral sequence of a triple (g, k, I) with
// coefficients M. Everything is computed in the adapted frame
// [J_k, I_k, J_L, I_L]; relative cochains live on [J_L, I_L].
//
// Coordinate conventions:
//   C^q(I, I_k; M)     : relative coordinates of ideal_complex(), written V'_q
//   C^p(g/I, ...; V'_q): full coordinates rank(J_L tuple) * dim V'_q + v
//   H^q(I, I_k; M)     : class coordinates of ideal_cohomology().classes[q]
class HochschildSerre {
 public:
  // m is a g-module in the original basis of g. With a pairing M ⊗ M → M the
  // cohomology rings carry products.
  HochschildSerre(TripleData t, const LieModule& m, std::optional<ModulePairing> pairing = std::nullopt,
                  int jobs = 1, int max_r = -1);

  const TripleData& triple() const { return t_; }
  const Frame& frame() const { return t_.frame; }
  const LieModule& module() const { return m_; }  // adapted basis
  std::size_t n_jk() const { return t_.frame.n_jk; }
  std::size_t n_ik() const { return t_.frame.n_ik; }
  std::size_t n_jl() const { return t_.frame.n_jl; }
  std::size_t n_il() const { return t_.frame.n_il; }
  bool has_products() const { return pairing_.has_value(); }

  const RelativeComplex& main() const { return *main_; }
  const FilteredComplex& filtration() const { return *fc_; }
  const CohomologyRing& main_cohomology() const { return h_; }
  const PageState& pages() const { return ps_; }

  const RelativeComplex& ideal_complex() const { return *rci_; }
  const CohomologyRing& ideal_cohomology() const { return hi_; }
  std::size_t vdim(int q) const { return rci_->dim(q); }
  std::size_t hdim(int q) const { return hi_.betti.at(q); }

  // g/I with basis (J_k, J_L); k/I_k is the first n_jk vectors.
  const LieAlgebra& quotient() const { return q_; }
  // Adapted index of each quotient basis vector.
  const std::vector<Index>& quotient_indices() const { return qidx_; }

  // θ_{x⁺} on V'_q for quotient basis vector a.
  const RationalMatrix& cochain_action(std::size_t a, int q) const { return vact_.at(q).at(a); }
  // [c] ↦ [θ_{x⁺} c] on H^q(I, I_k; M); x in original coordinates of g.
  RationalMatrix hq_action(const SparseVec& x, int q) const;
  RationalMatrix hq_action_adapted(const SparseVec& x, int q) const;
  const LieModule& hq_module(int q) const { return hmod_.at(q); }

  // C(g/I, k/I_k; C^q(I, I_k; M)) with the cochain-level action (d_+ need
  // not square to zero), and C(g/I, k/I_k; H^q(I, I_k; M)).
  const RelativeComplex& cpcq(int q) const { return *cpcq_.at(q); }
  const RelativeComplex& qh(int q) const { return *qh_.at(q); }
  const CohomologyRing& qh_cohomology(int q) const { return qhc_.at(q); }

  // Restriction of C^{p+q} (relative coordinates) to p arguments in J_L and
  // q in I_L. Vanishes on F_{p+1}.
  RationalMatrix s_map(int p, int q) const;
  // Shuffle lift of z ∈ C^p(g/I, k/I_k; V'_q) to C^{p+q}(g, k; M).
  SparseVec lift_tilde(int p, int q, const SparseVec& z) const;
  RationalMatrix lift_matrix(int p, int q) const;  // on cpcq(q).relative(p) coordinates
  // Lift evaluated directly by the shuffle formula on vectors of g given in
  // original coordinates, using π in original coordinates.
  SparseVec lift_value(int p, int q, const SparseVec& z, const std::vector<SparseVec>& args) const;
  // Value of a relative cochain on vectors of g in original coordinates.
  SparseVec evaluate(int n, const SparseVec& c, const std::vector<SparseVec>& args) const;

  RationalMatrix d_plus(int p, int q) const { return cpcq(q).space().differential(p); }
  RationalMatrix d_v(int p, int q) const;
  // Values in V'_q → class coordinates in H^q, blockwise; full coordinates
  // of qh(q) in degree p. Throws if a value is not a cocycle.
  SparseVec alpha(int p, int q, const SparseVec& z) const;

  // Comparison maps on page cells, all in the page's Z/B coordinates.
  RationalMatrix s_bar(int p, int q) const;  // E_0 → cpcq(q).relative(p)
  RationalMatrix phi(int p, int q) const;    // E_1 → qh(q).relative(p)
  RationalMatrix psi(int p, int q) const;    // E_2 → H^p(g/I, k/I_k; H^q)
  RationalMatrix edge_bottom(int p) const;   // E_2^{p0} → H^p(g, k; M)
  RationalMatrix eta(int p) const;           // H^p(g/I, k/I_k; H^0) → H^p(g, k; M)
  RationalMatrix edge_left(int q) const;     // H^q(g, k; M) → E_2^{0q}
  RationalMatrix j_star(int n) const;        // H^n(g, k; M) → H^n(I, I_k; M)
  RationalMatrix i_star(int q) const;        // H^q(g, k; M) → H^0(g/I, k/I_k; H^q)

  // Product of classes on page r; needs a pairing.
  SparseVec page_product(int r, int p1, int q1, const SparseVec& a, int p2, int q2, const SparseVec& b) const;
  // Product H^{p1}(H^{q1}) × H^{p2}(H^{q2}) → H^{p1+p2}(H^{q1+q2}) in class coordinates.
  SparseVec quotient_product(int p1, int q1, const SparseVec& a, int p2, int q2, const SparseVec& b) const;

  // Checks; each returns a list of failures.
  std::vector<std::string> check_s_maps() const;        // kernel, image, s∘lift = id
  std::vector<std::string> check_lift_values(std::uint64_t seed, int samples) const;
  std::vector<std::string> check_e0() const;            // s̄ iso, d_0 = (-1)^p d_v
  std::vector<std::string> check_e1() const;            // φ iso, d_1 = d_+, s_{p+1} d z̃ = d_+ z
  std::vector<std::string> check_psi() const;           // ψ iso in every cell
  std::vector<std::string> check_action() const;        // bracket compatibility, invariance of j*
  std::vector<std::string> check_edges() const;
  std::vector<std::string> check_products(int r) const; // Leibniz on E_r; sign rule for ψ at r = 2

 private:
  std::size_t jl_rank(Mask jmask) const { return jsub_.rank(jmask); }
  SparseVec class_to_cochain(int q, const SparseVec& cls) const;

  TripleData t_;
  LieModule m_;
  std::optional<ModulePairing> pairing_;
  std::unique_ptr<RelativeComplex> main_;
  std::unique_ptr<FilteredComplex> fc_;
  CohomologyRing h_;
  PageState ps_;

  CochainSpace ideal_space_;  // C(I_L; M) inside the adapted algebra
  std::unique_ptr<RelativeComplex> rci_;
  CohomologyRing hi_;
  LieAlgebra q_;
  std::vector<Index> qidx_;
  SubsetIndex jsub_;
  std::vector<std::vector<RationalMatrix>> vact_;
  std::vector<std::vector<RationalMatrix>> hact_;
  std::vector<LieModule> hmod_;
  std::vector<std::unique_ptr<RelativeComplex>> cpcq_, qh_;
  std::vector<CohomologyRing> qhc_;
};

// Pairing H^{q1}(I, I_k) ⊗ H^{q2}(I, I_k) → H^{q1+q2}(I, I_k) from the ring.
ModulePairing ring_pairing(const CohomologyRing& r, int q1, int q2);

// E_2 ≅ H(g/I, k/I_k) ⊗ H(I, I_k)^{g/I} for trivial coefficients.
struct TensorDecomposition {
  std::vector<std::size_t> a_dims, b_dims;
  std::map<std::pair<int, int>, RationalMatrix> Psi;  // E_2^{pq} → A^p ⊗ B^q, index i * dim B^q + j
  std::vector<std::string> failures;
  bool degenerate_at_2 = false;
  // Filled when the sequence degenerates at E_2.
  std::vector<std::size_t> pi_star_rank;
  bool pi_star_injective = false, i_star_surjective = false;
  std::vector<Subspace> ker_i_star, ideal_a_plus;  // in class coordinates of H^n(g, k)
  bool ideal_equal = false;
  bool free_basis = false;
  bool ok() const { return failures.empty(); }
};

// Throws Error("hypothesis fails for q = ...") if H^p(g/I; B^q) → H^p(g/I; H^q)
// is not an isomorphism for some q.
TensorDecomposition tensor_decomposition(const HochschildSerre& hs);

// k = 0 only: the double complex C(g; C(I; M)) with d_h, d_v and R_p.
std::vector<std::string> check_double_complex(const HochschildSerre& hs);

}  // namespace hsc
