#include "hsc/hs.hpp"

#include <functional>
#include <random>

namespace hsc {

namespace {

const char* kModule = "hs_spectral";

std::string cell(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

SparseVec from_map(const std::map<Index, Rational>& m) {
  SparseVec v;
  for (const auto& [i, x] : m) v.push(i, x);
  return v;
}

SparseVec lift_class(const Subquotient& e, const SparseVec& coords) {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [i, x] : coords.entries) terms.emplace_back(x, &e.representatives()[i]);
  if (terms.empty()) return {};
  return combine(terms, e.ambient());
}

RationalMatrix zero_matrix(std::size_t r, std::size_t c) { return RationalMatrix(r, c); }

bool is_invertible(const RationalMatrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

// Value of a cochain on arbitrary vectors (coordinates in the algebra of s).
SparseVec eval_multi(const CochainSpace& s, const Cochain& c, const std::vector<SparseVec>& args) {
  std::map<Index, Rational> acc;
  std::vector<Index> idx(args.size());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational coeff) {
    if (k == args.size()) {
      for (const auto& [m, x] : s.evaluate(c, idx).entries) acc[m] += coeff * x;
      return;
    }
    for (const auto& [i, x] : args[k].entries) {
      bool dup = false;
      for (std::size_t j = 0; j < k; ++j) dup = dup || idx[j] == i;
      if (dup) continue;
      idx[k] = i;
      rec(k + 1, coeff * x);
    }
  };
  rec(0, Rational(1));
  return from_map(acc);
}

// Inversions of the shuffle that moves the positions in s in front of the rest.
int shuffle_inversions(Mask s, Mask rest) {
  int inv = 0;
  for (Mask x = s; x; x &= x - 1) inv += count_below(rest, std::countr_zero(x));
  return inv;
}

}  // namespace

ModulePairing ring_pairing(const CohomologyRing& r, int q1, int q2) {
  ModulePairing mp;
  const int top = static_cast<int>(r.betti.size()) - 1;
  mp.dim_m = r.betti.at(q1);
  mp.dim_n = r.betti.at(q2);
  mp.dim_p = q1 + q2 <= top ? r.betti[q1 + q2] : 0;
  mp.table.resize(mp.dim_m * mp.dim_n);
  if (mp.dim_p == 0) return mp;
  for (std::size_t i = 0; i < mp.dim_m; ++i)
    for (std::size_t j = 0; j < mp.dim_n; ++j) mp.table[i * mp.dim_n + j] = r.products.at({q1, i, q2, j});
  return mp;
}

HochschildSerre::HochschildSerre(TripleData t, const LieModule& m, std::optional<ModulePairing> pairing, int jobs,
                                 int max_r)
    : t_(std::move(t)), pairing_(std::move(pairing)) {
  const Frame& f = t_.frame;
  const LieAlgebra& a = f.algebra;
  const ModulePairing* pp = pairing_ ? &*pairing_ : nullptr;
  m_ = transport_module(m, f.basis);
  main_ = std::make_unique<RelativeComplex>(a, f.k_dim(), m_);
  fc_ = std::make_unique<FilteredComplex>(*main_, f.n_jl);
  h_ = cohomology(*main_, pp);
  ps_ = compute_pages(*fc_, max_r, jobs);

  // ideal side
  std::vector<Index> il, iidx;
  for (std::size_t i = f.il_begin(); i < f.dim(); ++i) il.push_back(static_cast<Index>(i));
  for (std::size_t i = f.n_jk; i < f.n_jk + f.n_ik; ++i) iidx.push_back(static_cast<Index>(i));
  iidx.insert(iidx.end(), il.begin(), il.end());
  ideal_space_ = CochainSpace(a, il, m_);
  std::vector<SparseVec> ib;
  LieModule mi{m_.dim, {}};
  for (Index i : iidx) {
    ib.push_back(unit_vec(i));
    mi.action.push_back(m_.action[i]);
  }
  rci_ = std::make_unique<RelativeComplex>(subalgebra(a, ib), f.n_ik, mi);
  hi_ = cohomology(*rci_, pp);

  // quotient g/I
  std::vector<int> qpos(f.dim(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < f.n_jk; ++i) qidx_.push_back(static_cast<Index>(i));
  for (std::size_t i = f.jl_begin(); i < f.il_begin(); ++i) qidx_.push_back(static_cast<Index>(i));
  for (std::size_t k = 0; k < qidx_.size(); ++k) {
    qpos[qidx_[k]] = static_cast<int>(k);
    labels.push_back(a.label(qidx_[k]));
  }
  q_ = LieAlgebra(qidx_.size(), labels);
  for (std::size_t x = 0; x < qidx_.size(); ++x)
    for (std::size_t y = x + 1; y < qidx_.size(); ++y) {
      SparseVec v;
      for (const auto& [i, c] : a.bracket(qidx_[x], qidx_[y]).entries)
        if (qpos[i] >= 0) v.push(static_cast<Index>(qpos[i]), c);
      q_.set_bracket(static_cast<Index>(x), static_cast<Index>(y), v);
    }
  jsub_ = SubsetIndex(f.n_jl);

  const int qtop = static_cast<int>(f.n_il);
  vact_.resize(qtop + 1);
  hact_.resize(qtop + 1);
  for (int q = 0; q <= qtop; ++q) {
    for (Index x : qidx_) {
      RationalMatrix th = ideal_space_.theta(unit_vec(x), q);
      std::vector<SparseVec> cols;
      for (const auto& b : rci_->relative(q).basis()) {
        auto c = rci_->try_restrict(q, th.apply(b));
        if (!c) throw Error(kModule, "θ_{x⁺} does not preserve C(I, I_k; M)");
        cols.push_back(std::move(*c));
      }
      vact_[q].push_back(RationalMatrix::from_columns(vdim(q), cols));
    }
    for (Index x : qidx_) hact_[q].push_back(hq_action_adapted(unit_vec(x), q));
    hmod_.push_back(LieModule{hdim(q), hact_[q]});
    cpcq_.push_back(std::make_unique<RelativeComplex>(q_, f.n_jk, LieModule{vdim(q), vact_[q]}, false));
    qh_.push_back(std::make_unique<RelativeComplex>(q_, f.n_jk, hmod_[q]));
  }
  for (int q = 0; q <= qtop; ++q) {
    if (q == 0 && pp) {
      ModulePairing p00 = ring_pairing(hi_, 0, 0);
      qhc_.push_back(cohomology(*qh_[0], &p00));
    } else {
      qhc_.push_back(cohomology(*qh_[q]));
    }
  }
}

RationalMatrix HochschildSerre::hq_action_adapted(const SparseVec& x, int q) const {
  SparseVec xp;
  for (const auto& [i, c] : x.entries)
    if (!t_.frame.in_ideal(i)) xp.push(i, c);
  const Subquotient& h = hi_.classes.at(q);
  if (xp.empty()) return zero_matrix(h.dim(), h.dim());
  RationalMatrix th = ideal_space_.theta(xp, q);
  std::vector<SparseVec> cols;
  for (const auto& rep : h.representatives()) {
    SparseVec img = rci_->restrict_to(q, th.apply(rci_->embed(q, rep)));
    auto cls = h.try_class_coords(img);
    if (!cls) throw Error(kModule, "not a cocycle");
    cols.push_back(std::move(*cls));
  }
  return RationalMatrix::from_columns(h.dim(), cols);
}

RationalMatrix HochschildSerre::hq_action(const SparseVec& x, int q) const {
  return hq_action_adapted(t_.frame.coords.coords(x), q);
}

// ---------------------------------------------------------------- s_p and lifts

RationalMatrix HochschildSerre::s_map(int p, int q) const {
  const int n = p + q;
  const CochainSpace& sp = main_->space();
  const std::size_t dm = m_.dim, vd = vdim(q);
  const Mask low = (Mask(1) << n_jl()) - 1;
  std::vector<SparseVec> cols;
  for (const auto& b : main_->relative(n).basis()) {
    std::map<Mask, std::map<Index, Rational>> blocks;
    for (const auto& [c, x] : b.entries) {
      const Mask t = sp.tuple_at(n, c);
      const Mask jm = t & low;
      if (popcount(jm) != p) continue;
      blocks[jm][static_cast<Index>(rci_->space().coord(t >> n_jl(), static_cast<Index>(c % dm)))] += x;
    }
    std::map<Index, Rational> out;
    for (const auto& [jm, vals] : blocks) {
      SparseVec v = rci_->restrict_to(q, from_map(vals));
      const std::size_t base = jl_rank(jm) * vd;
      for (const auto& [i, x] : v.entries) out[static_cast<Index>(base + i)] += x;
    }
    cols.push_back(from_map(out));
  }
  return RationalMatrix::from_columns(jsub_.count(p) * vd, cols);
}

SparseVec HochschildSerre::lift_tilde(int p, int q, const SparseVec& z) const {
  const CochainSpace& cs = cpcq(q).space();
  const std::size_t vd = vdim(q), dm = m_.dim;
  std::map<Index, Rational> acc;
  for (const auto& [idx, x] : z.entries) {
    const Mask jm = cs.tuple_at(p, idx);
    SparseVec w = rci_->embed(q, unit_vec(static_cast<Index>(idx % vd)));
    for (const auto& [c, y] : w.entries) {
      const Mask im = rci_->space().tuple_at(q, c);
      acc[static_cast<Index>(main_->space().coord(jm | (im << n_jl()), static_cast<Index>(c % dm)))] += x * y;
    }
  }
  auto r = main_->try_restrict(p + q, from_map(acc));
  if (!r) throw Error(kModule, "lift is not a relative cochain");
  return *r;
}

RationalMatrix HochschildSerre::lift_matrix(int p, int q) const {
  std::vector<SparseVec> cols;
  for (const auto& z : cpcq(q).relative(p).basis()) cols.push_back(lift_tilde(p, q, z));
  return RationalMatrix::from_columns(main_->dim(p + q), cols);
}

SparseVec HochschildSerre::evaluate(int n, const SparseVec& c, const std::vector<SparseVec>& args) const {
  std::vector<SparseVec> ad;
  for (const auto& x : args) ad.push_back(t_.frame.coords.coords(x));
  return eval_multi(main_->space(), Cochain{n, main_->embed(n, c)}, ad);
}

SparseVec HochschildSerre::lift_value(int p, int q, const SparseVec& z, const std::vector<SparseVec>& args) const {
  const int n = p + q;
  if (static_cast<int>(args.size()) != n) throw Error(kModule, "wrong number of arguments");
  const Frame& f = t_.frame;
  std::vector<int> qpos(f.dim(), -1), ipos(f.dim(), -1);
  for (std::size_t k = 0; k < qidx_.size(); ++k) qpos[qidx_[k]] = static_cast<int>(k);
  for (std::size_t i = f.n_jk; i < f.n_jk + f.n_ik; ++i) ipos[i] = static_cast<int>(i - f.n_jk);
  for (std::size_t i = f.il_begin(); i < f.dim(); ++i) ipos[i] = static_cast<int>(f.n_ik + i - f.il_begin());
  std::vector<SparseVec> bar, star;
  for (const auto& x : args) {
    SparseVec xs = t_.pi.apply(x);
    SparseVec xa = f.coords.coords(add(x, negate(xs)));
    SparseVec xsa = f.coords.coords(xs);
    SparseVec b, s;
    for (const auto& [i, c] : xa.entries) {
      if (qpos[i] < 0) throw Error(kModule, "x - π(x) is not in the complement");
      b.push(static_cast<Index>(qpos[i]), c);
    }
    for (const auto& [i, c] : xsa.entries) {
      if (ipos[i] < 0) throw Error(kModule, "π(x) is not in the ideal");
      s.push(static_cast<Index>(ipos[i]), c);
    }
    bar.push_back(std::move(b));
    star.push_back(std::move(s));
  }
  std::map<Index, Rational> acc;
  const Mask all = (Mask(1) << n) - 1;
  const SubsetIndex shuffles(n);
  for (Mask s : shuffles.subsets(p)) {
    std::vector<SparseVec> ys, xs;
    for (int i = 0; i < n; ++i) ((s >> i) & 1 ? ys : xs).push_back(((s >> i) & 1 ? bar : star)[i]);
    SparseVec v = eval_multi(cpcq(q).space(), Cochain{p, z}, ys);
    if (v.empty()) continue;
    SparseVec val = eval_multi(rci_->space(), Cochain{q, rci_->embed(q, v)}, xs);
    const Rational sg = (shuffle_inversions(s, all & ~s) & 1) ? -1 : 1;
    for (const auto& [m, x] : val.entries) acc[m] += sg * x;
  }
  return from_map(acc);
}

RationalMatrix HochschildSerre::d_v(int p, int q) const { return block_diagonal(jsub_.count(p), rci_->d(q)); }

SparseVec HochschildSerre::alpha(int p, int q, const SparseVec& z) const {
  const std::size_t vd = vdim(q), hd = hdim(q);
  std::map<std::size_t, SparseVec> blocks;
  for (const auto& [i, x] : z.entries) blocks[i / vd].push(static_cast<Index>(i % vd), x);
  std::map<Index, Rational> out;
  for (const auto& [blk, v] : blocks) {
    auto c = hi_.classes.at(q).try_class_coords(v);
    if (!c) throw Error(kModule, "value at " + cell(p, q) + " is not a cocycle");
    for (const auto& [i, x] : c->entries) out[static_cast<Index>(blk * hd + i)] += x;
  }
  return from_map(out);
}

SparseVec HochschildSerre::class_to_cochain(int q, const SparseVec& cls) const {
  return lift_class(hi_.classes.at(q), cls);
}

// ---------------------------------------------------------------- comparison maps

RationalMatrix HochschildSerre::s_bar(int p, int q) const {
  const auto& e = ps_.page(0).cells.at({p, q}).E;
  RationalMatrix s = s_map(p, q);
  std::vector<SparseVec> cols;
  for (const auto& rep : e.representatives()) cols.push_back(cpcq(q).restrict_to(p, s.apply(rep)));
  return RationalMatrix::from_columns(cpcq(q).dim(p), cols);
}

RationalMatrix HochschildSerre::phi(int p, int q) const {
  const auto& e = ps_.page(1).cells.at({p, q}).E;
  RationalMatrix s = s_map(p, q);
  std::vector<SparseVec> cols;
  for (const auto& rep : e.representatives()) cols.push_back(qh(q).restrict_to(p, alpha(p, q, s.apply(rep))));
  return RationalMatrix::from_columns(qh(q).dim(p), cols);
}

RationalMatrix HochschildSerre::psi(int p, int q) const {
  const auto& e = ps_.page(2).cells.at({p, q}).E;
  const Subquotient& hpq = qhc_.at(q).classes.at(p);
  RationalMatrix s = s_map(p, q);
  std::vector<SparseVec> cols;
  for (const auto& rep : e.representatives()) {
    auto c = hpq.try_class_coords(qh(q).restrict_to(p, alpha(p, q, s.apply(rep))));
    if (!c) throw Error(kModule, "psi not iso: image at " + cell(p, q) + " is not a cocycle");
    cols.push_back(std::move(*c));
  }
  RationalMatrix m = RationalMatrix::from_columns(hpq.dim(), cols);
  if (!is_invertible(m)) throw Error(kModule, "psi not iso at " + cell(p, q));
  return m;
}

RationalMatrix HochschildSerre::edge_bottom(int p) const {
  const auto& e = ps_.page(2).cells.at({p, 0}).E;
  std::vector<SparseVec> cols;
  for (const auto& rep : e.representatives()) cols.push_back(h_.classes.at(p).class_coords(rep));
  return RationalMatrix::from_columns(h_.betti.at(p), cols);
}

RationalMatrix HochschildSerre::eta(int p) const {
  const RelativeComplex& q0 = qh(0);
  const std::size_t h0 = hdim(0);
  std::vector<SparseVec> cols;
  for (const auto& rep : qhc_.at(0).representatives(p)) {
    std::map<Index, Rational> acc;
    for (const auto& [idx, x] : q0.embed(p, rep).entries) {
      const Mask jm = q0.space().tuple_at(p, idx);
      SparseVec v = rci_->embed(0, class_to_cochain(0, unit_vec(static_cast<Index>(idx % h0))));
      for (const auto& [mm, y] : v.entries) acc[static_cast<Index>(main_->space().coord(jm, mm))] += x * y;
    }
    cols.push_back(h_.classes.at(p).class_coords(main_->restrict_to(p, from_map(acc))));
  }
  return RationalMatrix::from_columns(h_.betti.at(p), cols);
}

RationalMatrix HochschildSerre::edge_left(int q) const {
  const auto& e = ps_.page(2).cells.at({0, q}).E;
  std::vector<SparseVec> cols;
  for (const auto& rep : h_.representatives(q)) cols.push_back(e.class_coords(rep));
  return RationalMatrix::from_columns(e.dim(), cols);
}

RationalMatrix HochschildSerre::j_star(int n) const {
  RationalMatrix s = s_map(0, n);
  std::vector<SparseVec> cols;
  for (const auto& rep : h_.representatives(n)) cols.push_back(hi_.classes.at(n).class_coords(s.apply(rep)));
  return RationalMatrix::from_columns(hdim(n), cols);
}

RationalMatrix HochschildSerre::i_star(int q) const {
  RationalMatrix j = j_star(q);
  const Subquotient& h0 = qhc_.at(q).classes.at(0);
  std::vector<SparseVec> cols;
  for (std::size_t c = 0; c < j.cols(); ++c) {
    auto r = qh(q).try_restrict(0, j.col(c));
    if (!r) throw Error(kModule, "restricted class is not invariant");
    cols.push_back(h0.class_coords(*r));
  }
  return RationalMatrix::from_columns(h0.dim(), cols);
}

// ---------------------------------------------------------------- products

SparseVec HochschildSerre::page_product(int r, int p1, int q1, const SparseVec& a, int p2, int q2,
                                        const SparseVec& b) const {
  if (!pairing_) throw Error(kModule, "no pairing");
  const Page& pg = ps_.page(r);
  auto tgt = pg.cells.find({p1 + p2, q1 + q2});
  if (tgt == pg.cells.end()) return {};
  SparseVec ra = lift_class(pg.cells.at({p1, q1}).E, a);
  SparseVec rb = lift_class(pg.cells.at({p2, q2}).E, b);
  SparseVec prod = main_->cup(p1 + q1, ra, p2 + q2, rb, *pairing_);
  auto c = tgt->second.E.try_class_coords(prod);
  if (!c) throw Error(kModule, "product of page representatives leaves Z_r");
  return *c;
}

SparseVec HochschildSerre::quotient_product(int p1, int q1, const SparseVec& a, int p2, int q2,
                                            const SparseVec& b) const {
  if (!pairing_) throw Error(kModule, "no pairing");
  if (p1 + p2 > static_cast<int>(n_jl()) || q1 + q2 > static_cast<int>(n_il())) return {};
  const RelativeComplex &ca = qh(q1), &cb = qh(q2), &cc = qh(q1 + q2);
  SparseVec ra = ca.embed(p1, lift_class(qhc_[q1].classes.at(p1), a));
  SparseVec rb = cb.embed(p2, lift_class(qhc_[q2].classes.at(p2), b));
  SparseVec prod = cup(ca.space(), p1, ra, cb.space(), p2, rb, ring_pairing(hi_, q1, q2), cc.space());
  auto c = qhc_[q1 + q2].classes.at(p1 + p2).try_class_coords(cc.restrict_to(p1 + p2, prod));
  if (!c) throw Error(kModule, "quotient product is not a cocycle");
  return *c;
}

// ---------------------------------------------------------------- checks

std::vector<std::string> HochschildSerre::check_s_maps() const {
  std::vector<std::string> bad;
  for (int p = 0; p <= static_cast<int>(n_jl()); ++p)
    for (int q = 0; q <= static_cast<int>(n_il()); ++q) {
      const int n = p + q;
      RationalMatrix s = s_map(p, q);
      Subspace fp = fc_->F(p, n);
      if (intersection(kernel_basis(s), fp) != fc_->F(p + 1, n)) bad.push_back("ker s_p != F_{p+1} at " + cell(p, q));
      if (image_of(s, fp) != cpcq(q).relative(p)) bad.push_back("image of s_p is not C^p(C^q) at " + cell(p, q));
      for (const auto& z : cpcq(q).relative(p).basis()) {
        SparseVec l = lift_tilde(p, q, z);
        if (!fp.contains(l)) bad.push_back("lift not in F_p at " + cell(p, q));
        if (s.apply(l) != z) {
          bad.push_back("s_p(lift(z)) != z at " + cell(p, q));
          break;
        }
      }
    }
  return bad;
}

std::vector<std::string> HochschildSerre::check_lift_values(std::uint64_t seed, int samples) const {
  std::vector<std::string> bad;
  std::mt19937_64 rng(seed);
  const std::size_t dim = t_.g.dim();
  for (int s = 0; s < samples; ++s) {
    const int p = static_cast<int>(rng() % (n_jl() + 1));
    const int q = static_cast<int>(rng() % (n_il() + 1));
    const auto& basis = cpcq(q).relative(p).basis();
    if (basis.empty() || static_cast<std::size_t>(p + q) > dim) continue;
    SparseVec z;
    for (const auto& b : basis) z = axpy(z, Rational(static_cast<long>(rng() % 7) - 3), b);
    std::vector<SparseVec> args;
    for (int i = 0; i < p + q; ++i) {
      // original basis vectors, sometimes a sum of two
      SparseVec x = unit_vec(static_cast<Index>(rng() % dim));
      if (rng() % 3 == 0) x = add(x, unit_vec(static_cast<Index>(rng() % dim)));
      args.push_back(x);
    }
    SparseVec lhs = evaluate(p + q, lift_tilde(p, q, z), args);
    SparseVec rhs = lift_value(p, q, z, args);
    if (lhs != rhs) bad.push_back("lift value mismatch at " + cell(p, q));
  }
  return bad;
}

std::vector<std::string> HochschildSerre::check_e0() const {
  std::vector<std::string> bad;
  const Page& e0 = ps_.page(0);
  for (int p = 0; p <= static_cast<int>(n_jl()); ++p)
    for (int q = 0; q <= static_cast<int>(n_il()); ++q) {
      const int n = p + q;
      RationalMatrix sb = s_bar(p, q);
      if (!is_invertible(sb)) bad.push_back("s_bar not iso at " + cell(p, q));
      if (q + 1 > static_cast<int>(n_il())) continue;
      const Rational sg = (p & 1) ? -1 : 1;
      // s_p(Dc) = (-1)^p d_v s_p(c) on F_p
      RationalMatrix s0 = s_map(p, q), s1 = s_map(p, q + 1), dv = d_v(p, q);
      const Subspace fp = fc_->F(p, n);
      for (const auto& c : fp.basis())
        if (s1.apply(main_->d(n).apply(c)) != scaled(dv.apply(s0.apply(c)), sg)) {
          bad.push_back("s_p D != (-1)^p d_v s_p at " + cell(p, q));
          break;
        }
      // d_0 under s_bar
      std::vector<SparseVec> cols;
      for (const auto& z : cpcq(q).relative(p).basis())
        cols.push_back(cpcq(q + 1).restrict_to(p, dv.apply(z)));
      RationalMatrix dvr = RationalMatrix::from_columns(cpcq(q + 1).dim(p), cols);
      if (s_bar(p, q + 1) * e0.d.at({p, q}) != scaled(dvr * sb, sg)) bad.push_back("d_0 != (-1)^p d_v at " + cell(p, q));
    }
  return bad;
}

std::vector<std::string> HochschildSerre::check_e1() const {
  std::vector<std::string> bad;
  const Page& e1 = ps_.page(1);
  for (int p = 0; p <= static_cast<int>(n_jl()); ++p)
    for (int q = 0; q <= static_cast<int>(n_il()); ++q) {
      const int n = p + q;
      RationalMatrix ph = phi(p, q);
      if (!is_invertible(ph)) bad.push_back("phi not iso at " + cell(p, q));
      if (p + 1 > static_cast<int>(n_jl())) continue;
      if (phi(p + 1, q) * e1.d.at({p, q}) != qh(q).d(p) * ph) bad.push_back("d_1 != d_+ under phi at " + cell(p, q));
      RationalMatrix s1 = s_map(p + 1, q), dp = d_plus(p, q);
      for (const auto& z : cpcq(q).relative(p).basis())
        if (s1.apply(main_->d(n).apply(lift_tilde(p, q, z))) != dp.apply(z)) {
          bad.push_back("s_{p+1} D lift(z) != d_+ z at " + cell(p, q));
          break;
        }
    }
  return bad;
}

std::vector<std::string> HochschildSerre::check_psi() const {
  std::vector<std::string> bad;
  for (int p = 0; p <= static_cast<int>(n_jl()); ++p)
    for (int q = 0; q <= static_cast<int>(n_il()); ++q) {
      try {
        psi(p, q);
      } catch (const Error& e) {
        bad.push_back(e.what());
      }
    }
  return bad;
}

std::vector<std::string> HochschildSerre::check_action() const {
  std::vector<std::string> bad;
  const std::size_t dim = t_.g.dim();
  for (int q = 0; q <= static_cast<int>(n_il()); ++q) {
    std::vector<RationalMatrix> act;
    for (std::size_t i = 0; i < dim; ++i) act.push_back(hq_action(unit_vec(static_cast<Index>(i)), q));
    auto combo = [&](const SparseVec& x) {
      RationalMatrix m = zero_matrix(hdim(q), hdim(q));
      for (const auto& [i, c] : x.entries) m = m + scaled(act[i], c);
      return m;
    };
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        RationalMatrix lhs = combo(t_.g.bracket(static_cast<Index>(i), static_cast<Index>(j)));
        if (lhs != act[i] * act[j] - act[j] * act[i])
          bad.push_back("action not bracket compatible on H^" + std::to_string(q) + " for " + t_.g.label(i) + ", " +
                        t_.g.label(j));
      }
    for (const auto& x : t_.ideal.basis())
      if (!combo(x).is_zero()) bad.push_back("ideal acts nontrivially on H^" + std::to_string(q));
    RationalMatrix j = j_star(q);
    for (std::size_t i = 0; i < dim; ++i)
      if (!(act[i] * j).is_zero()) bad.push_back("j* image not invariant in degree " + std::to_string(q));
  }
  return bad;
}

std::vector<std::string> HochschildSerre::check_edges() const {
  std::vector<std::string> bad;
  for (int p = 0; p <= static_cast<int>(n_jl()); ++p)
    if (eta(p) * psi(p, 0) != edge_bottom(p))
      bad.push_back("edge_bottom != pullback under psi at p = " + std::to_string(p));
  for (int q = 0; q <= static_cast<int>(n_il()); ++q)
    if (psi(0, q) * edge_left(q) != i_star(q)) bad.push_back("edge_left != restriction under psi at q = " + std::to_string(q));
  return bad;
}

std::vector<std::string> HochschildSerre::check_products(int r) const {
  std::vector<std::string> bad;
  if (!pairing_) return {"no pairing"};
  const Page& pg = ps_.page(r);
  const int pmax = static_cast<int>(n_jl()), qmax = static_cast<int>(n_il());
  auto dr = [&](int p, int q, const SparseVec& e) -> std::pair<std::pair<int, int>, SparseVec> {
    auto it = pg.d.find({p, q});
    if (it == pg.d.end() || it->second.rows() == 0) return {{p + r, q - r + 1}, {}};
    return {{p + r, q - r + 1}, it->second.apply(e)};
  };
  for (int p1 = 0; p1 <= pmax; ++p1)
    for (int q1 = 0; q1 <= qmax; ++q1)
      for (int p2 = 0; p1 + p2 <= pmax; ++p2)
        for (int q2 = 0; q1 + q2 <= qmax; ++q2) {
          const std::size_t da = pg.dim(p1, q1), db = pg.dim(p2, q2);
          for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) {
              SparseVec a = unit_vec(static_cast<Index>(i)), b = unit_vec(static_cast<Index>(j));
              SparseVec ab = page_product(r, p1, q1, a, p2, q2, b);
              // Leibniz
              auto [t, dab] = dr(p1 + p2, q1 + q2, ab);
              auto [ta, da_] = dr(p1, q1, a);
              auto [tb, db_] = dr(p2, q2, b);
              SparseVec rhs;
              if (!da_.empty()) rhs = add(rhs, page_product(r, ta.first, ta.second, da_, p2, q2, b));
              if (!db_.empty()) {
                SparseVec x = page_product(r, p1, q1, a, tb.first, tb.second, db_);
                rhs = axpy(rhs, ((p1 + q1) & 1) ? -1 : 1, x);
              }
              if (dab != rhs) bad.push_back("Leibniz fails on E_" + std::to_string(r) + " at " + cell(p1, q1) + cell(p2, q2));
              if (r == 2) {
                SparseVec lhs = psi(p1 + p2, q1 + q2).apply(ab);
                SparseVec pr = quotient_product(p1, q1, psi(p1, q1).col(i), p2, q2, psi(p2, q2).col(j));
                if ((p2 * q1) & 1) pr = negate(pr);
                if (lhs != pr) bad.push_back("psi product sign rule fails at " + cell(p1, q1) + cell(p2, q2));
              }
            }
        }
  return bad;
}

// ---------------------------------------------------------------- tensor decomposition

TensorDecomposition tensor_decomposition(const HochschildSerre& hs) {
  TensorDecomposition td;
  if (!hs.has_products()) throw Error(kModule, "tensor decomposition needs a pairing");
  if (hs.module().dim != 1 || hs.hdim(0) != 1) throw Error(kModule, "tensor decomposition needs trivial coefficients");
  const int pmax = static_cast<int>(hs.n_jl()), qmax = static_cast<int>(hs.n_il());
  const CohomologyRing& a = hs.qh_cohomology(0);
  const CohomologyRing& hi = hs.ideal_cohomology();
  const LieAlgebra& q = hs.quotient();
  for (int p = 0; p <= pmax; ++p) td.a_dims.push_back(a.betti[p]);
  // B^q = H^0(g/I; H^q) as vectors in H^q class coordinates
  std::vector<std::vector<SparseVec>> bvec(qmax + 1);
  for (int k = 0; k <= qmax; ++k) {
    for (const auto& r : hs.qh_cohomology(k).representatives(0)) bvec[k].push_back(hs.qh(k).embed(0, r));
    td.b_dims.push_back(bvec[k].size());
  }
  // hypothesis: H^p(g/I; B^q) → H^p(g/I; H^q) is an isomorphism
  for (int k = 0; k <= qmax; ++k) {
    const std::size_t w = td.b_dims[k];
    RelativeComplex qw(q, hs.n_jk(), trivial_module(q, w));
    CohomologyRing hw = cohomology(qw);
    RationalMatrix incl = RationalMatrix::from_columns(hs.hdim(k), bvec[k]);
    for (int p = 0; p <= pmax; ++p) {
      RationalMatrix blk = block_diagonal(qw.space().subsets().count(p), incl);
      std::vector<SparseVec> cols;
      for (const auto& b : qw.relative(p).basis()) cols.push_back(hs.qh(k).restrict_to(p, blk.apply(b)));
      RationalMatrix m = RationalMatrix::from_columns(hs.qh(k).dim(p), cols);
      RationalMatrix ind = induced_map(m, hw.classes[p], hs.qh_cohomology(k).classes[p]);
      if (!is_invertible(ind)) throw Error(kModule, "hypothesis fails for q = " + std::to_string(k));
    }
  }
  // F: A^p ⊗ B^q → H^p(H^q), Ψ = F^{-1} ψ
  std::map<std::pair<int, int>, RationalMatrix> finv;
  for (int p = 0; p <= pmax; ++p)
    for (int k = 0; k <= qmax; ++k) {
      const std::size_t hq = hs.hdim(k);
      std::vector<SparseVec> cols;
      for (const auto& ar : a.representatives(p)) {
        SparseVec af = hs.qh(0).embed(p, ar);
        for (const auto& b : bvec[k]) {
          std::map<Index, Rational> acc;
          for (const auto& [t, x] : af.entries)
            for (const auto& [s, y] : b.entries) acc[static_cast<Index>(t * hq + s)] += x * y;
          SparseVec c;
          for (const auto& [i, x] : acc) c.push(i, x);
          cols.push_back(hs.qh_cohomology(k).classes[p].class_coords(hs.qh(k).restrict_to(p, c)));
        }
      }
      RationalMatrix f = RationalMatrix::from_columns(hs.qh_cohomology(k).betti[p], cols);
      auto inv = inverse(f);
      if (!inv) {
        td.failures.push_back("A⊗B → H(g/I; H) not iso at " + cell(p, k));
        continue;
      }
      finv[{p, k}] = *inv;
      td.Psi[{p, k}] = *inv * hs.psi(p, k);
    }
  if (!td.ok()) return td;

  // algebra isomorphism with (a1⊗b1)(a2⊗b2) = (-1)^{p2 q1} a1a2 ⊗ b1b2
  auto b_product = [&](int q1, std::size_t i, int q2, std::size_t j) {
    std::map<Index, Rational> acc;
    for (const auto& [s, x] : bvec[q1][i].entries)
      for (const auto& [t, y] : bvec[q2][j].entries)
        for (const auto& [u, z] : hi.products.at({q1, s, q2, t}).entries) acc[u] += x * y * z;
    SparseVec v;
    for (const auto& [u, z] : acc) v.push(u, z);
    return hs.qh_cohomology(q1 + q2).classes[0].class_coords(hs.qh(q1 + q2).restrict_to(0, v));
  };
  for (int p1 = 0; p1 <= pmax; ++p1)
    for (int q1 = 0; q1 <= qmax; ++q1)
      for (int p2 = 0; p1 + p2 <= pmax; ++p2)
        for (int q2 = 0; q1 + q2 <= qmax; ++q2) {
          const RationalMatrix &u = td.Psi.at({p1, q1}), &w = td.Psi.at({p2, q2});
          const std::size_t b1 = td.b_dims[q1], b2 = td.b_dims[q2], b12 = td.b_dims[q1 + q2];
          for (std::size_t i = 0; i < u.cols(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) {
              SparseVec lhs = td.Psi.at({p1 + p2, q1 + q2}).apply(
                  hs.page_product(2, p1, q1, unit_vec(static_cast<Index>(i)), p2, q2, unit_vec(static_cast<Index>(j))));
              std::map<Index, Rational> acc;
              for (const auto& [x, cx] : u.col(i).entries)
                for (const auto& [y, cy] : w.col(j).entries) {
                  SparseVec ap = a.products.at({p1, x / b1, p2, y / b2});
                  if (ap.empty()) continue;
                  SparseVec bp = b_product(q1, x % b1, q2, y % b2);
                  for (const auto& [s, cs] : ap.entries)
                    for (const auto& [t, ct] : bp.entries) acc[static_cast<Index>(s * b12 + t)] += cx * cy * cs * ct;
                }
              SparseVec rhs;
              for (const auto& [k, x] : acc) rhs.push(k, x);
              if ((p2 * q1) & 1) rhs = negate(rhs);
              if (lhs != rhs) td.failures.push_back("Psi is not multiplicative at " + cell(p1, q1) + cell(p2, q2));
            }
        }

  td.degenerate_at_2 = hs.pages().degeneration_page == 2;
  if (!td.degenerate_at_2) return td;
  const CohomologyRing& h = hs.main_cohomology();
  const int top = hs.main().top_degree();
  td.pi_star_injective = true;
  for (int p = 0; p <= pmax; ++p) {
    std::size_t rk = rank(hs.eta(p));
    td.pi_star_rank.push_back(rk);
    if (rk != td.a_dims[p]) td.pi_star_injective = false;
  }
  td.i_star_surjective = true;
  std::vector<RationalMatrix> istar;
  for (int n = 0; n <= top; ++n) {
    istar.push_back(n <= qmax ? hs.i_star(n) : RationalMatrix(0, h.betti[n]));
    if (rank(istar[n]) != istar[n].rows()) td.i_star_surjective = false;
    td.ker_i_star.push_back(kernel_basis(istar[n]));
  }
  std::vector<std::vector<SparseVec>> ideal(top + 1), free(top + 1);
  for (int p = 0; p <= pmax; ++p) {
    RationalMatrix e = hs.eta(p);
    for (std::size_t i = 0; i < e.cols(); ++i) {
      for (int n = p; n <= top && p > 0; ++n)
        for (std::size_t j = 0; j < h.betti[n - p]; ++j)
          ideal[n].push_back(h.product(p, e.col(i), n - p, unit_vec(static_cast<Index>(j))));
      for (int k = 0; k <= qmax && p + k <= top; ++k)
        for (std::size_t j = 0; j < td.b_dims[k]; ++j) {
          auto lift = solve(istar[k], unit_vec(static_cast<Index>(j)));
          if (!lift) {
            td.failures.push_back("no lift of a B basis vector in degree " + std::to_string(k));
            continue;
          }
          free[p + k].push_back(h.product(p, e.col(i), k, *lift));
        }
    }
  }
  td.ideal_equal = true;
  td.free_basis = true;
  for (int n = 0; n <= top; ++n) {
    td.ideal_a_plus.push_back(Subspace::span(h.betti[n], ideal[n]));
    if (td.ideal_a_plus[n] != td.ker_i_star[n]) td.ideal_equal = false;
    if (free[n].size() != h.betti[n] || Subspace::span(h.betti[n], free[n]).dim() != h.betti[n]) td.free_basis = false;
  }
  if (!td.pi_star_injective) td.failures.push_back("pi* is not injective");
  if (!td.i_star_surjective) td.failures.push_back("i* is not onto the invariants");
  if (!td.ideal_equal) td.failures.push_back("ker i* differs from the ideal generated by A+");
  if (!td.free_basis) td.failures.push_back("lifts of a B basis are not a free A-basis");
  return td;
}

// ---------------------------------------------------------------- double complex

std::vector<std::string> check_double_complex(const HochschildSerre& hs) {
  if (hs.n_jk() + hs.n_ik() != 0) throw Error(kModule, "double complex check needs k = 0");
  std::vector<std::string> bad;
  const LieAlgebra& a = hs.frame().algebra;
  const LieModule& m = hs.module();
  const std::size_t N = a.dim(), nj = hs.n_jl(), ni = hs.n_il();
  std::vector<Index> il;
  for (std::size_t i = nj; i < N; ++i) il.push_back(static_cast<Index>(i));
  CochainSpace ci(a, il, m), cg(a, m);
  SubsetIndex gsub(N);
  std::vector<LieModule> vq;
  std::vector<CochainSpace> hq;
  for (std::size_t q = 0; q <= ni; ++q) {
    LieModule v{ci.dim(static_cast<int>(q)), {}};
    for (std::size_t i = 0; i < N; ++i) v.action.push_back(ci.theta(unit_vec(static_cast<Index>(i)), static_cast<int>(q)));
    if (!validate_module(a, v).ok()) bad.push_back("C^" + std::to_string(q) + "(I; M) is not a g-module");
    vq.push_back(v);
    hq.emplace_back(a, v);
  }
  auto dh = [&](int p, int q) { return hq[q].differential(p); };
  auto dv = [&](int p, int q) { return block_diagonal(gsub.count(p), ci.differential(q)); };
  // R_p: C^{p+q}(g; M) → C^p(g; C^q(I; M))
  auto R = [&](int p, int q) {
    const int n = p + q;
    const std::size_t dm = m.dim, vd = vq[q].dim;
    const Mask imask = ((Mask(1) << N) - 1) & ~((Mask(1) << nj) - 1);
    std::vector<Triplet> tr;
    for (std::size_t c = 0; c < cg.dim(n); ++c) {
      const Mask u = cg.tuple_at(n, c);
      const Index mm = static_cast<Index>(c % dm);
      const SubsetIndex picks(n);
      for (Mask x : picks.subsets(q)) {
        // x picks q of the n positions of u; they must lie in I
        Mask xs = 0, ts = 0;
        int k = 0;
        for (Mask r = u; r; r &= r - 1, ++k) ((x >> k) & 1 ? xs : ts) |= Mask(1) << std::countr_zero(r);
        if ((xs & ~imask) != 0) continue;
        const Rational sg = (shuffle_inversions(ts, xs) & 1) ? -1 : 1;
        tr.push_back({static_cast<Index>(gsub.rank(ts) * vd + ci.coord(xs >> nj, mm)), static_cast<Index>(c), sg});
      }
    }
    return RationalMatrix::from_triplets(gsub.count(p) * vd, cg.dim(n), std::move(tr));
  };
  for (int q = 0; q <= static_cast<int>(ni); ++q)
    for (int p = 0; p <= static_cast<int>(N); ++p) {
      if (p + 1 <= static_cast<int>(N) && !(dh(p + 1, q) * dh(p, q)).is_zero()) bad.push_back("d_h^2 != 0 at " + cell(p, q));
      if (q + 1 <= static_cast<int>(ni) && dh(p, q + 1) * dv(p, q) != dv(p + 1, q) * dh(p, q))
        bad.push_back("d_h d_v != d_v d_h at " + cell(p, q));
      const int n = p + q;
      if (n + 1 > static_cast<int>(N)) continue;
      RationalMatrix lhs = R(p + 1, q) * cg.differential(n);
      RationalMatrix rhs = dh(p, q) * R(p, q);
      if (q >= 1) {
        RationalMatrix t = dv(p + 1, q - 1) * R(p + 1, q - 1);
        rhs = (p + 1) & 1 ? rhs - t : rhs + t;
      }
      if (lhs != rhs) bad.push_back("R_{p+1} d != d_h R_p + (-1)^{p+1} d_v R_{p+1} at " + cell(p, q));
    }
  return bad;
}

}  // namespace hsc
