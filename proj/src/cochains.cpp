#include "hsc/cochains.hpp"

#include <algorithm>

namespace hsc {

namespace {

const char* kModule = "cochains";

std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- subsets

SubsetIndex::SubsetIndex(std::size_t m) : m_(m) {
  if (m > 26) throw Error(kModule, "exterior power domain too large (" + std::to_string(m) + " > 26)");
  binom_.assign(m + 1, std::vector<std::size_t>(m + 2, 0));
  for (std::size_t i = 0; i <= m; ++i) {
    binom_[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) binom_[i][j] = binom_[i - 1][j - 1] + (j <= i - 1 ? binom_[i - 1][j] : 0);
  }
  lists_.resize(m + 1);
  for (std::size_t n = 0; n <= m; ++n) {
    auto& l = lists_[n];
    l.reserve(binom_[m][n]);
    if (n == 0) {
      l.push_back(0);
      continue;
    }
    Mask x = (Mask(1) << n) - 1, limit = Mask(1) << m;
    while (x < limit) {
      l.push_back(x);
      Mask c = x & (~x + 1), r = x + c;
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
}

std::size_t SubsetIndex::count(int n) const {
  if (n < 0 || static_cast<std::size_t>(n) > m_) return 0;
  return binom_[m_][n];
}

std::size_t SubsetIndex::rank(Mask s) const {
  std::size_t r = 0;
  std::size_t i = 1;
  while (s) {
    int t = std::countr_zero(s);
    if (static_cast<std::size_t>(t) >= i) r += binom_[t][i];
    ++i;
    s &= s - 1;
  }
  return r;
}

// ---------------------------------------------------------------- cochain spaces

CochainSpace::CochainSpace(std::shared_ptr<const LieAlgebra> g, std::vector<Index> domain,
                           std::shared_ptr<const LieModule> m)
    : g_(std::move(g)), m_(std::move(m)), domain_(std::move(domain)), pos_(g_->dim(), -1), subsets_(domain_.size()) {
  if (m_->action.size() != g_->dim()) throw Error(kModule, "module does not match algebra");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] >= g_->dim() || pos_[domain_[i]] >= 0) throw Error(kModule, "bad cochain domain");
    pos_[domain_[i]] = static_cast<int>(i);
  }
}

CochainSpace::CochainSpace(const LieAlgebra& g, std::vector<Index> domain, const LieModule& m)
    : CochainSpace(std::make_shared<LieAlgebra>(g), std::move(domain), std::make_shared<LieModule>(m)) {}

namespace {
std::vector<Index> all_indices(std::size_t n) {
  std::vector<Index> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Index>(i);
  return v;
}
}  // namespace

CochainSpace::CochainSpace(const LieAlgebra& g, const LieModule& m) : CochainSpace(g, all_indices(g.dim()), m) {}

std::size_t CochainSpace::dim(int n) const { return subsets_.count(n) * module_dim(); }

std::pair<int, Mask> CochainSpace::tuple_of(const std::vector<Index>& args) const {
  std::vector<int> p;
  for (Index a : args) {
    if (a >= pos_.size() || pos(a) < 0) return {0, 0};
    p.push_back(pos(a));
  }
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return {0, 0};
      if (p[i] > p[j]) ++inv;
    }
  Mask m = 0;
  for (int x : p) m |= Mask(1) << x;
  return {parity_sign(inv), m};
}

RationalMatrix CochainSpace::differential(int n) const {
  const std::size_t vd = module_dim();
  if (n < 0 || n >= static_cast<int>(domain_size())) return RationalMatrix(dim(n + 1), dim(n));
  std::vector<Triplet> t;
  // projected brackets of domain pairs
  const std::size_t dm = domain_size();
  std::vector<std::vector<std::pair<int, Rational>>> br(dm * dm);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = a + 1; b < dm; ++b)
      for (const auto& [k, c] : g_->bracket(domain_[a], domain_[b]).entries)
        if (pos(k) >= 0) br[a * dm + b].emplace_back(pos(k), c);
  std::vector<std::vector<Triplet>> act(dm);
  for (std::size_t a = 0; a < dm; ++a) act[a] = m_->action[domain_[a]].triplets();

  for (Mask y : subsets_.subsets(n + 1)) {
    auto ys = bits_of(y);
    const std::size_t row0 = subsets_.rank(y) * vd;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const auto& a = act[ys[i]];
      if (a.empty()) continue;
      const std::size_t col0 = subsets_.rank(y ^ (Mask(1) << ys[i])) * vd;
      const int s = parity_sign(static_cast<int>(i));
      for (const auto& x : a)
        t.push_back({static_cast<Index>(row0 + x.row), static_cast<Index>(col0 + x.col), s * x.value});
    }
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = i + 1; j < ys.size(); ++j) {
        const auto& b = br[ys[i] * dm + ys[j]];
        if (b.empty()) continue;
        const Mask rest = y ^ (Mask(1) << ys[i]) ^ (Mask(1) << ys[j]);
        for (const auto& [k, c] : b) {
          if (rest & (Mask(1) << k)) continue;
          const int s = parity_sign(static_cast<int>(i + j) + count_below(rest, k));
          const std::size_t col0 = subsets_.rank(rest | (Mask(1) << k)) * vd;
          for (std::size_t m = 0; m < vd; ++m)
            t.push_back({static_cast<Index>(row0 + m), static_cast<Index>(col0 + m), s * c});
        }
      }
  }
  return RationalMatrix::from_triplets(dim(n + 1), dim(n), std::move(t));
}

RationalMatrix CochainSpace::theta(const SparseVec& z, int n) const {
  const std::size_t vd = module_dim();
  if (n < 0 || n > static_cast<int>(domain_size())) return RationalMatrix(dim(n), dim(n));
  std::vector<Triplet> t;
  const auto rho = m_->act(z).triplets();
  const std::size_t dm = domain_size();
  std::vector<std::vector<std::pair<int, Rational>>> zb(dm);
  for (std::size_t a = 0; a < dm; ++a)
    for (const auto& [k, c] : g_->bracket(z, unit_vec(domain_[a])).entries)
      if (pos(k) >= 0) zb[a].emplace_back(pos(k), c);

  for (Mask y : subsets_.subsets(n)) {
    const std::size_t row0 = subsets_.rank(y) * vd;
    for (const auto& x : rho) t.push_back({static_cast<Index>(row0 + x.row), static_cast<Index>(row0 + x.col), x.value});
    auto ys = bits_of(y);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const Mask rest = y ^ (Mask(1) << ys[i]);
      for (const auto& [k, c] : zb[ys[i]]) {
        if (k == ys[i]) {
          for (std::size_t m = 0; m < vd; ++m)
            t.push_back({static_cast<Index>(row0 + m), static_cast<Index>(row0 + m), -c});
          continue;
        }
        if (rest & (Mask(1) << k)) continue;
        const int s = parity_sign(static_cast<int>(i) + count_below(rest, k));
        const std::size_t col0 = subsets_.rank(rest | (Mask(1) << k)) * vd;
        for (std::size_t m = 0; m < vd; ++m)
          t.push_back({static_cast<Index>(row0 + m), static_cast<Index>(col0 + m), -s * c});
      }
    }
  }
  return RationalMatrix::from_triplets(dim(n), dim(n), std::move(t));
}

RationalMatrix CochainSpace::iota(const SparseVec& z, int n) const {
  const std::size_t vd = module_dim();
  if (n <= 0 || n > static_cast<int>(domain_size())) return RationalMatrix(dim(n - 1), dim(n));
  std::vector<Triplet> t;
  std::vector<std::pair<int, Rational>> zp;
  for (const auto& [k, c] : z.entries)
    if (pos(k) >= 0) zp.emplace_back(pos(k), c);
  for (Mask y : subsets_.subsets(n - 1)) {
    const std::size_t row0 = subsets_.rank(y) * vd;
    for (const auto& [k, c] : zp) {
      if (y & (Mask(1) << k)) continue;
      const int s = parity_sign(count_below(y, k));
      const std::size_t col0 = subsets_.rank(y | (Mask(1) << k)) * vd;
      for (std::size_t m = 0; m < vd; ++m)
        t.push_back({static_cast<Index>(row0 + m), static_cast<Index>(col0 + m), s * c});
    }
  }
  return RationalMatrix::from_triplets(dim(n - 1), dim(n), std::move(t));
}

Cochain CochainSpace::iota(const SparseVec& z, const Cochain& c) const {
  if (c.degree == 0) return {-1, {}};
  return {c.degree - 1, iota(z, c.degree).apply(c.coeffs)};
}

SparseVec CochainSpace::evaluate(const Cochain& c, const std::vector<Index>& args) const {
  if (args.size() != static_cast<std::size_t>(c.degree)) throw Error(kModule, "wrong number of arguments");
  auto [s, mask] = tuple_of(args);
  SparseVec out;
  if (s == 0) return out;
  const std::size_t base = coord(mask, 0), vd = module_dim();
  for (const auto& [i, x] : c.coeffs.entries)
    if (i >= base && i < base + vd) out.entries.emplace_back(static_cast<Index>(i - base), s * x);
  return out;
}

void CochainSpace::add_value(Cochain& c, const std::vector<Index>& args, const SparseVec& value) const {
  auto [s, mask] = tuple_of(args);
  if (s == 0) throw Error(kModule, "tuple has repeated or out-of-domain entries");
  SparseVec v;
  const std::size_t base = coord(mask, 0);
  for (const auto& [i, x] : value.entries) v.entries.emplace_back(static_cast<Index>(base + i), s * x);
  c.coeffs = add(c.coeffs, v);
}

SparseVec cup(const CochainSpace& sa, int p, const SparseVec& a, const CochainSpace& sb, int q, const SparseVec& b,
              const ModulePairing& pairing, const CochainSpace& sc) {
  if (pairing.dim_m != sa.module_dim() || pairing.dim_n != sb.module_dim() || pairing.dim_p != sc.module_dim())
    throw Error(kModule, "pairing shape mismatch");
  if (sa.domain() != sb.domain() || sa.domain() != sc.domain()) throw Error(kModule, "cup needs a common domain");
  const std::size_t va = sa.module_dim(), vb = sb.module_dim(), vc = sc.module_dim();
  std::vector<std::pair<Index, Rational>> acc;
  for (const auto& [ia, xa] : a.entries) {
    const Mask s = sa.subsets().subsets(p)[ia / va];
    const Index ma = static_cast<Index>(ia % va);
    for (const auto& [ib, xb] : b.entries) {
      const Mask r = sb.subsets().subsets(q)[ib / vb];
      if (s & r) continue;
      const Index mb = static_cast<Index>(ib % vb);
      const SparseVec& val = pairing.at(ma, mb);
      if (val.empty()) continue;
      int inv = 0;
      for (Mask x = s; x; x &= x - 1) inv += count_below(r, std::countr_zero(x));
      Rational c = xa * xb;
      if (inv & 1) c = -c;
      const std::size_t base = sc.subsets().rank(s | r) * vc;
      for (const auto& [m, v] : val.entries) acc.emplace_back(static_cast<Index>(base + m), c * v);
    }
  }
  std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  std::size_t k = 0;
  while (k < acc.size()) {
    Index i = acc[k].first;
    Rational s = acc[k].second;
    ++k;
    while (k < acc.size() && acc[k].first == i) s += acc[k++].second;
    out.push(i, s);
  }
  return out;
}

// ---------------------------------------------------------------- relative complexes

RelativeComplex::RelativeComplex(const LieAlgebra& g, std::size_t k_dim, const LieModule& m, bool check_square)
    : k_dim_(k_dim) {
  if (k_dim > g.dim()) throw Error(kModule, "k larger than g");
  std::vector<Index> domain;
  for (std::size_t i = k_dim; i < g.dim(); ++i) domain.push_back(static_cast<Index>(i));
  space_ = CochainSpace(g, domain, m);
  const int top = top_degree();
  rel_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    if (k_dim == 0) {
      rel_[n] = Subspace::full(space_.dim(n));
      continue;
    }
    std::vector<RationalMatrix> th;
    for (std::size_t x = 0; x < k_dim; ++x) th.push_back(space_.theta(unit_vec(static_cast<Index>(x)), n));
    std::vector<const RationalMatrix*> ptrs;
    for (const auto& a : th) ptrs.push_back(&a);
    rel_[n] = kernel_basis(vstack(ptrs));
  }
  d_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    const std::size_t target = n < top ? rel_[n + 1].dim() : 0;
    if (n == top) {
      d_[n] = RationalMatrix(0, rel_[n].dim());
      continue;
    }
    RationalMatrix full = space_.differential(n);
    std::vector<SparseVec> cols;
    cols.reserve(rel_[n].dim());
    for (const auto& b : rel_[n].basis()) {
      auto c = rel_[n + 1].coords(full.apply(b));
      cols.push_back(std::move(c));
    }
    d_[n] = RationalMatrix::from_columns(target, cols);
  }
  if (check_square)
    for (int n = 0; n + 1 < top; ++n)
      if (!(d_[n + 1] * d_[n]).is_zero()) throw Error(kModule, "d∘d != 0 in degree " + std::to_string(n));
}

std::optional<SparseVec> RelativeComplex::try_restrict(int n, const SparseVec& full) const {
  if (!rel_.at(n).contains(full)) return std::nullopt;
  return rel_.at(n).coords(full);
}

SparseVec RelativeComplex::cup(int p, const SparseVec& a, int q, const SparseVec& b, const ModulePairing& pairing) const {
  if (p + q > top_degree()) return {};
  SparseVec full = hsc::cup(space_, p, embed(p, a), space_, q, embed(q, b), pairing, space_);
  return restrict_to(p + q, full);
}

RelativeComplex relative_complex(const TripleData& t, const LieModule& m) {
  return RelativeComplex(t.frame.algebra, t.frame.k_dim(), transport_module(m, t.frame.basis));
}

RelativeComplex relative_complex(const LieAlgebra& g, const std::vector<SparseVec>& k_basis, const LieModule& m) {
  Subspace k = Subspace::span(g.dim(), k_basis);
  if (!is_subalgebra(g, k)) throw Error(kModule, "k is not a subalgebra");
  std::vector<SparseVec> basis = k.basis();
  Subquotient comp(Subspace::full(g.dim()), k);
  for (const auto& v : comp.representatives()) basis.push_back(v);
  return RelativeComplex(change_basis(g, basis), k.dim(), transport_module(m, basis));
}

// ---------------------------------------------------------------- cohomology

std::size_t CohomologyRing::total_dim() const {
  std::size_t s = 0;
  for (auto b : betti) s += b;
  return s;
}

CohomologyRing cohomology(const RelativeComplex& c, const ModulePairing* pairing) {
  CohomologyRing r;
  const int top = c.top_degree();
  for (int n = 0; n <= top; ++n) {
    r.cocycles.push_back(n < top ? kernel_basis(c.d(n)) : Subspace::full(c.dim(n)));
    r.coboundaries.push_back(n > 0 ? image(c.d(n - 1)) : Subspace(c.dim(0)));
    r.classes.emplace_back(r.cocycles.back(), r.coboundaries.back());
    r.betti.push_back(r.classes.back().dim());
  }
  if (pairing) {
    r.has_products = true;
    for (int p = 0; p <= top; ++p)
      for (int q = 0; p + q <= top; ++q)
        for (std::size_t i = 0; i < r.betti[p]; ++i)
          for (std::size_t j = 0; j < r.betti[q]; ++j) {
            SparseVec prod = c.cup(p, r.representatives(p)[i], q, r.representatives(q)[j], *pairing);
            auto cls = r.classes[p + q].try_class_coords(prod);
            if (!cls) throw Error(kModule, "cup product of cocycles is not a cocycle");
            r.products[{p, i, q, j}] = *cls;
          }
  }
  return r;
}

SparseVec CohomologyRing::product(int p, const SparseVec& a, int q, const SparseVec& b) const {
  if (!has_products) throw Error(kModule, "ring was computed without products");
  if (p + q >= static_cast<int>(betti.size())) return {};
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  std::vector<Rational> coeffs;
  for (const auto& [i, x] : a.entries)
    for (const auto& [j, y] : b.entries) {
      const SparseVec& v = products.at({p, i, q, j});
      if (!v.empty()) terms.emplace_back(x * y, &v);
    }
  if (terms.empty()) return {};
  return combine(terms, betti[p + q]);
}

}  // namespace hsc
