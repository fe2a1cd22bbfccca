#include "hsc/bk.hpp"

#include <algorithm>
#include <numeric>

namespace hsc {

namespace {

const char* kModule = "bk";

bool subset_of(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SparseVec pair_vec(const SparseVec& x, const SparseVec& y, std::size_t d) {
  SparseVec v = x;
  for (const auto& [i, c] : y.entries) v.push(static_cast<Index>(i + d), c);
  return v;
}

std::string dims_str(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::size_t> trim(std::vector<std::size_t> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

std::size_t total_of(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t(0)); }

// dim span{a·b : a ∈ R^p, b ∈ R^q} for every p ≤ q.
std::vector<std::size_t> product_ranks(const CohomologyRing& r) {
  std::vector<std::size_t> out;
  const int top = static_cast<int>(r.betti.size()) - 1;
  for (int p = 0; p <= top; ++p)
    for (int q = p; p + q <= top; ++q) {
      std::vector<SparseVec> v;
      for (std::size_t i = 0; i < r.betti[p]; ++i)
        for (std::size_t j = 0; j < r.betti[q]; ++j)
          v.push_back(r.product(p, unit_vec(static_cast<Index>(i)), q, unit_vec(static_cast<Index>(j))));
      out.push_back(Subspace::span(r.betti[p + q], v).dim());
    }
  return out;
}

std::size_t joint_kernel_dim(const std::vector<RationalMatrix>& mats, std::size_t n) {
  if (n == 0) return 0;
  std::vector<const RationalMatrix*> ptrs;
  for (const auto& m : mats) ptrs.push_back(&m);
  if (ptrs.empty()) return n;
  return kernel_basis(vstack(ptrs)).dim();
}

void add_check(BKReport& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace

std::string format_set(const std::set<int>& s) {
  std::string out = "[";
  bool first = true;
  for (int i : s) {
    out += (first ? "" : ", ") + std::to_string(i);
    first = false;
  }
  return out + "]";
}

std::vector<std::size_t> ParabolicDatum::roots_in(const std::set<int>& M) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < rd.n_positive(); ++a)
    if (subset_of(rd.support(a), M)) out.push_back(a);
  return out;
}

std::vector<std::size_t> ParabolicDatum::roots_outside(const std::set<int>& M) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < rd.n_positive(); ++a)
    if (!subset_of(rd.support(a), M)) out.push_back(a);
  return out;
}

ParabolicDatum make_parabolic(const RootDatum& rd, const std::set<int>& levi) {
  for (int i : levi)
    if (i < 1 || i > rd.rank) throw InputError(kModule, "levi label " + std::to_string(i) + " out of range for " + rd.type);
  ParabolicDatum pd;
  pd.rd = rd;
  pd.levi = levi;
  pd.m = rd.rank - static_cast<int>(levi.size());
  pd.relabel.assign(rd.rank, 0);
  int next = 1;
  for (int i = 1; i <= rd.rank; ++i)
    if (!levi.count(i)) pd.relabel[i - 1] = next++;
  for (int i : levi) pd.relabel[i - 1] = next++;
  return pd;
}

std::string BKInstance::name() const {
  return pd.rd.type + " levi=" + format_set(pd.levi) + " t=" + format_set(t_support);
}

BKInstance build_bk_instance(const ParabolicDatum& pd, const std::set<int>& t_support) {
  const RootDatum& rd = pd.rd;
  for (int i : t_support) {
    if (i < 1 || i > rd.rank) throw InputError(kModule, "t-support label " + std::to_string(i) + " out of range");
    if (pd.levi.count(i)) throw InputError(kModule, "t-support label " + std::to_string(i) + " lies in the levi set");
  }
  BKInstance b;
  b.pd = pd;
  b.t_support = t_support;
  b.K = pd.levi;
  b.K.insert(t_support.begin(), t_support.end());
  const std::size_t d = rd.g.dim();
  b.gxg = direct_product(rd.g, rd.g);

  std::vector<std::string> labels;
  auto diag = [&](std::size_t i) { return pair_vec(unit_vec(static_cast<Index>(i)), unit_vec(static_cast<Index>(i)), d); };
  auto add = [&](SparseVec v, std::string label, bool in_k, bool ideal) {
    const Index idx = static_cast<Index>(b.gk_basis.size());
    b.gk_basis.push_back(std::move(v));
    labels.push_back(std::move(label));
    if (in_k) b.k_indices.push_back(idx);
    if (ideal) b.ideal_indices.push_back(idx);
    else b.levi_K_indices.push_back(idx);
  };
  for (int i = 0; i < rd.rank; ++i) add(diag(rd.h_index(i)), "d" + rd.g.label(rd.h_index(i)), true, false);
  for (std::size_t a : pd.roots_in(b.K)) {
    const bool in_l = subset_of(rd.support(a), pd.levi);
    add(diag(rd.e_index(a)), "d" + rd.g.label(rd.e_index(a)), in_l, false);
    add(diag(rd.f_index(a)), "d" + rd.g.label(rd.f_index(a)), in_l, false);
  }
  const auto outside = pd.roots_outside(b.K);
  for (std::size_t a : outside) add(unit_vec(static_cast<Index>(rd.f_index(a))), rd.g.label(rd.f_index(a)) + "x0", false, true);
  for (std::size_t a : outside)
    add(unit_vec(static_cast<Index>(d + rd.e_index(a))), "0x" + rd.g.label(rd.e_index(a)), false, true);

  if (b.gk_basis.size() != d) throw Error(kModule, "dim g_K != dim g");
  auto span_of = [&](const std::vector<Index>& idx) {
    std::vector<SparseVec> v;
    for (Index i : idx) v.push_back(b.gk_basis[i]);
    return Subspace::span(2 * d, v);
  };
  b.l_K_delta = span_of(b.levi_K_indices);
  b.u_tilde = span_of(b.ideal_indices);
  b.l_delta = span_of(b.k_indices);
  if (intersection(b.u_tilde, b.l_delta).dim() != 0) throw Error(kModule, "ũ_K meets l_Δ");
  b.gk = subalgebra(b.gxg, b.gk_basis, labels);  // throws if not closed
  if (!is_ideal(b.gk, Subspace::coordinate(d, b.ideal_indices))) throw Error(kModule, "ũ_K is not an ideal of g_K");
  if (!is_subalgebra(b.gk, Subspace::coordinate(d, b.levi_K_indices))) throw Error(kModule, "l_{K,Δ} is not a subalgebra");
  std::vector<SparseVec> kb, ib;
  for (Index i : b.k_indices) kb.push_back(unit_vec(i));
  for (Index i : b.ideal_indices) ib.push_back(unit_vec(i));
  b.triple = build_triple(b.gk, kb, ib);
  return b;
}

HochschildSerre bk_spectral(const BKInstance& b, int jobs) {
  return HochschildSerre(b.triple, trivial_module(b.gk), ModulePairing::scalar(), jobs);
}

CohomologyRing bk_cohomology(const BKInstance& b) {
  const ModulePairing p = ModulePairing::scalar();
  return cohomology(relative_complex(b.triple, trivial_module(b.gk)), &p);
}

std::vector<std::size_t> kostant_invariants(const BKInstance& b) {
  const LieAlgebra& a = b.gk;
  std::vector<SparseVec> ib;
  for (Index i : b.ideal_indices) ib.push_back(unit_vec(i));
  LieAlgebra u = subalgebra(a, ib);
  CochainSpace cs(a, b.ideal_indices, trivial_module(a));
  RelativeComplex rc(u, 0, trivial_module(u));
  CohomologyRing h = cohomology(rc);
  std::vector<std::size_t> out;
  for (int q = 0; q <= rc.top_degree(); ++q) {
    const Subquotient& cls = h.classes[q];
    std::vector<RationalMatrix> acts;
    for (Index x : b.levi_K_indices) {
      RationalMatrix th = cs.theta(unit_vec(x), q);
      std::vector<SparseVec> cols;
      for (const auto& rep : cls.representatives())
        cols.push_back(cls.class_coords(rc.restrict_to(q, th.apply(rc.embed(q, rep)))));
      acts.push_back(RationalMatrix::from_columns(cls.dim(), cols));
    }
    out.push_back(joint_kernel_dim(acts, cls.dim()));
  }
  return trim(out);
}

KostantRow kostant_table(const ParabolicDatum& pd, const std::set<int>& K) {
  if (!subset_of(pd.levi, K)) throw InputError(kModule, "K must contain the levi set");
  std::set<int> t;
  std::set_difference(K.begin(), K.end(), pd.levi.begin(), pd.levi.end(), std::inserter(t, t.end()));
  BKInstance b = build_bk_instance(pd, t);
  KostantRow row;
  row.K = K;
  row.invariant_dims = kostant_invariants(b);
  row.total = total_of(row.invariant_dims);
  WeylCounts w = weyl_counts(pd.rd, pd.levi, K);
  row.expected = w.W_over_PK;
  row.by_length = w.by_length_PK;
  row.total_ok = row.total == row.expected;
  std::vector<std::size_t> graded(2 * row.by_length.size() - 1, 0);
  for (std::size_t l = 0; l < row.by_length.size(); ++l) graded[2 * l] = row.by_length[l];
  row.per_degree_match = trim(graded) == row.invariant_dims;
  return row;
}

std::vector<std::size_t> poly_product(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::size_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

bool BKReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const BKCheck& c) { return c.pass; });
}

BKReport verify_structure(const BKInstance& b, const HochschildSerre& hs) {
  BKReport r;
  r.instance = b.name();
  const CohomologyRing& h = hs.main_cohomology();
  const int top = static_cast<int>(h.betti.size()) - 1;
  r.betti = h.betti;
  r.total = h.total_dim();
  r.weyl = weyl_counts(b.pd.rd, b.pd.levi, b.K);
  const PageState& ps = hs.pages();
  r.degeneration_page = ps.degeneration_page;
  r.first_degenerate_page = ps.first_degenerate_page;
  const int pmax = static_cast<int>(hs.n_jl()), qmax = static_cast<int>(hs.n_il());
  r.e2_dims.assign(pmax + 1, std::vector<std::size_t>(qmax + 1, 0));
  r.einf_dims = r.e2_dims;
  std::size_t e2_total = 0;
  for (int p = 0; p <= pmax; ++p)
    for (int q = 0; q <= qmax; ++q) {
      r.e2_dims[p][q] = ps.dim(2, p, q);
      r.einf_dims[p][q] = ps.infinity.dim(p, q);
      e2_total += r.e2_dims[p][q];
    }

  // (a), (b)
  add_check(r, "degeneration", r.degeneration_page == 2, "degeneration page " + std::to_string(r.degeneration_page));
  add_check(r, "total-dim", r.total == r.weyl.W_over_P && e2_total == r.total,
            "dim H = " + std::to_string(r.total) + ", dim E_2 = " + std::to_string(e2_total) +
                ", |W^P| = " + std::to_string(r.weyl.W_over_P));
  bool even = true;
  for (int n = 1; n <= top; n += 2) even = even && h.betti[n] == 0;
  add_check(r, "even-degrees", even, "betti " + dims_str(h.betti));
  std::vector<std::size_t> by_len(top + 1, 0);
  for (std::size_t l = 0; l < r.weyl.by_length_P.size() && 2 * l <= static_cast<std::size_t>(top); ++l)
    by_len[2 * l] = r.weyl.by_length_P[l];
  add_check(r, "length-grading", by_len == h.betti, "coset lengths " + dims_str(r.weyl.by_length_P));

  // (c) subalgebra A = image of H(l_K, l) under η
  const CohomologyRing& a = hs.qh_cohomology(0);
  std::vector<RationalMatrix> eta;
  bool injective = true, multiplicative = true;
  for (int p = 0; p <= pmax; ++p) {
    eta.push_back(hs.eta(p));
    r.sub_dims.push_back(rank(eta[p]));
    injective = injective && r.sub_dims[p] == a.betti[p];
  }
  for (int p1 = 0; p1 <= pmax; ++p1)
    for (int p2 = 0; p1 + p2 <= pmax; ++p2)
      for (std::size_t i = 0; i < a.betti[p1]; ++i)
        for (std::size_t j = 0; j < a.betti[p2]; ++j) {
          SparseVec ab = a.product(p1, unit_vec(static_cast<Index>(i)), p2, unit_vec(static_cast<Index>(j)));
          if (eta[p1 + p2].apply(ab) != h.product(p1, eta[p1].col(i), p2, eta[p2].col(j))) multiplicative = false;
        }
  r.sub_dims = trim(r.sub_dims);
  {
    const RootDatum& rd = b.pd.rd;
    std::vector<SparseVec> lk, kk;
    for (int i = 0; i < rd.rank; ++i) lk.push_back(unit_vec(static_cast<Index>(rd.h_index(i))));
    for (std::size_t x : b.pd.roots_in(b.K)) {
      lk.push_back(unit_vec(static_cast<Index>(rd.e_index(x))));
      lk.push_back(unit_vec(static_cast<Index>(rd.f_index(x))));
    }
    LieAlgebra lka = subalgebra(rd.g, lk);
    for (int i = 0; i < rd.rank; ++i) kk.push_back(unit_vec(static_cast<Index>(i)));
    const auto in_k = b.pd.roots_in(b.K);
    for (std::size_t j = 0; j < in_k.size(); ++j)
      if (subset_of(rd.support(in_k[j]), b.pd.levi)) {
        kk.push_back(unit_vec(static_cast<Index>(rd.rank + 2 * j)));
        kk.push_back(unit_vec(static_cast<Index>(rd.rank + 2 * j + 1)));
      }
    const ModulePairing sc = ModulePairing::scalar();
    CohomologyRing ind = cohomology(relative_complex(lka, kk, trivial_module(lka)), &sc);
    r.sub_independent = trim(ind.betti);
    add_check(r, "subalgebra-dims",
              r.sub_dims == r.sub_independent && total_of(r.sub_dims) == r.weyl.WPK_over_WP && injective,
              "A " + dims_str(r.sub_dims) + ", H(l_K, l) " + dims_str(r.sub_independent) +
                  ", |W_{P_K}/W_P| = " + std::to_string(r.weyl.WPK_over_WP));
    add_check(r, "subalgebra-ring", multiplicative && product_ranks(ind) == product_ranks(a),
              multiplicative ? "η multiplicative" : "η not multiplicative");
  }

  // (d) quotient by the ideal generated by A⁺
  std::vector<std::vector<SparseVec>> gens(top + 1);
  for (int p = 1; p <= pmax; ++p)
    for (std::size_t i = 0; i < eta[p].cols(); ++i)
      for (int n = p; n <= top; ++n)
        for (std::size_t j = 0; j < h.betti[n - p]; ++j)
          gens[n].push_back(h.product(p, eta[p].col(i), n - p, unit_vec(static_cast<Index>(j))));
  for (int n = 0; n <= top; ++n) r.quotient_dims.push_back(h.betti[n] - Subspace::span(h.betti[n], gens[n]).dim());
  r.quotient_dims = trim(r.quotient_dims);
  for (int q = 0; q <= qmax; ++q) r.invariant_dims.push_back(joint_kernel_dim(hs.hq_module(q).action, hs.hdim(q)));
  r.invariant_dims = trim(r.invariant_dims);
  add_check(r, "quotient-dims", r.quotient_dims == r.invariant_dims && total_of(r.invariant_dims) == r.weyl.W_over_PK,
            "H/(A+) " + dims_str(r.quotient_dims) + ", H(ũ_K)^{l_K} " + dims_str(r.invariant_dims) +
                ", |W/W_{P_K}| = " + std::to_string(r.weyl.W_over_PK));

  // (e)
  add_check(r, "factorization", trim(poly_product(r.sub_dims, r.quotient_dims)) == trim(h.betti),
            dims_str(r.sub_dims) + " * " + dims_str(r.quotient_dims) + " = " + dims_str(h.betti));

  // ker i* = (A⁺), A-module structure
  try {
    TensorDecomposition td = tensor_decomposition(hs);
    for (const auto& k : td.ker_i_star) r.ker_i_star_dims.push_back(k.dim());
    std::string why = td.ok() ? "" : td.failures.front();
    add_check(r, "tensor-decomposition", td.ok() && td.pi_star_injective && td.i_star_surjective && td.free_basis,
              why.empty() ? "E_2 ≅ A ⊗ B, free A-module" : why);
    add_check(r, "ker-i-star", td.ideal_equal, td.ideal_equal ? "ker i* = (A+)" : "ker i* != (A+)");
  } catch (const Error& e) {
    add_check(r, "tensor-decomposition", false, e.what());
    add_check(r, "ker-i-star", false, "not computed");
  }
  return r;
}

}  // namespace hsc
