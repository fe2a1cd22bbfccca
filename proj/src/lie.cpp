#include "hsc/lie.hpp"

#include <sstream>

namespace hsc {

namespace {

const char* kModule = "lie_core";

std::string vec_str(const SparseVec& v) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [i, x] : v.entries) {
    os << (first ? "" : ", ") << i << ":" << to_string(x);
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> labels) : dim_(dim), table_(dim * dim) {
  set_labels(std::move(labels));
}

void LieAlgebra::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != dim_) throw Error(kModule, "label count does not match dimension");
  labels_ = std::move(labels);
}

std::string LieAlgebra::label(std::size_t i) const {
  return labels_.empty() ? "e" + std::to_string(i + 1) : labels_[i];
}

void LieAlgebra::set_bracket(Index i, Index j, const SparseVec& v) {
  if (i >= dim_ || j >= dim_) throw Error(kModule, "bracket index out of range");
  if (!v.empty() && v.entries.back().first >= dim_) throw Error(kModule, "bracket value out of range");
  if (i == j) {
    if (!v.empty()) throw Error(kModule, "[x, x] must vanish");
    return;
  }
  table_[i * dim_ + j] = v;
  table_[j * dim_ + i] = negate(v);
}

SparseVec LieAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [i, a] : x.entries)
    for (const auto& [j, b] : y.entries) {
      const SparseVec& c = bracket(i, j);
      if (!c.empty()) terms.emplace_back(a * b, &c);
    }
  if (terms.empty()) return {};
  return combine(terms, dim_);
}

RationalMatrix LieAlgebra::ad(const SparseVec& x) const {
  std::vector<SparseVec> cols(dim_);
  for (std::size_t j = 0; j < dim_; ++j) cols[j] = bracket(x, unit_vec(static_cast<Index>(j)));
  return RationalMatrix::from_columns(dim_, cols);
}

ValidationReport validate_algebra(const LieAlgebra& g) {
  ValidationReport rep;
  const std::size_t n = g.dim();
  for (Index i = 0; i < n; ++i) {
    if (!g.bracket(i, i).empty()) rep.violations.push_back("antisymmetry: [" + g.label(i) + "," + g.label(i) + "] != 0");
    for (Index j = i + 1; j < n; ++j)
      if (g.bracket(i, j) != negate(g.bracket(j, i)))
        rep.violations.push_back("antisymmetry: [" + g.label(i) + "," + g.label(j) + "] != -[" + g.label(j) + "," +
                                 g.label(i) + "]");
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        SparseVec ei = unit_vec(i), ej = unit_vec(j), ek = unit_vec(k);
        SparseVec s = add(add(g.bracket(ei, g.bracket(j, k)), g.bracket(ej, g.bracket(k, i))),
                          g.bracket(ek, g.bracket(i, j)));
        if (!s.empty())
          rep.violations.push_back("jacobi: (" + g.label(i) + "," + g.label(j) + "," + g.label(k) + ") -> " +
                                   vec_str(s));
      }
  return rep;
}

LieAlgebra change_basis(const LieAlgebra& g, const std::vector<SparseVec>& basis, std::vector<std::string> labels) {
  if (basis.size() != g.dim()) throw Error(kModule, "change_basis needs a full basis");
  return subalgebra(g, basis, std::move(labels));
}

LieAlgebra subalgebra(const LieAlgebra& g, const std::vector<SparseVec>& basis, std::vector<std::string> labels) {
  CoordinateSystem cs(g.dim(), basis);
  LieAlgebra h(basis.size(), std::move(labels));
  for (Index a = 0; a < basis.size(); ++a)
    for (Index b = a + 1; b < basis.size(); ++b) {
      auto c = cs.try_coords(g.bracket(basis[a], basis[b]));
      if (!c) throw Error(kModule, "span is not closed under the bracket");
      h.set_bracket(a, b, *c);
    }
  return h;
}

LieAlgebra direct_product(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim(), m = b.dim();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(a.label(i) + "'1");
  for (std::size_t i = 0; i < m; ++i) labels.push_back(b.label(i) + "'2");
  LieAlgebra p(n + m, labels);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) p.set_bracket(i, j, a.bracket(i, j));
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      SparseVec v;
      for (const auto& [k, x] : b.bracket(i, j).entries) v.entries.emplace_back(static_cast<Index>(k + n), x);
      p.set_bracket(static_cast<Index>(i + n), static_cast<Index>(j + n), v);
    }
  return p;
}

LieAlgebra lie_algebra_from_matrices(const std::vector<RationalMatrix>& mats, std::vector<std::string> labels) {
  if (mats.empty()) return LieAlgebra(0);
  const std::size_t r = mats[0].rows(), c = mats[0].cols();
  auto flat = [&](const RationalMatrix& m) {
    std::vector<Triplet> t = m.triplets();
    SparseVec v;
    for (auto& x : t) v.entries.emplace_back(static_cast<Index>(x.row * c + x.col), std::move(x.value));
    return v;
  };
  std::vector<SparseVec> vs;
  for (const auto& m : mats) {
    if (m.rows() != r || m.cols() != c) throw Error(kModule, "matrix shape mismatch");
    vs.push_back(flat(m));
  }
  CoordinateSystem cs(r * c, vs);
  LieAlgebra g(mats.size(), std::move(labels));
  for (Index a = 0; a < mats.size(); ++a)
    for (Index b = a + 1; b < mats.size(); ++b) {
      auto coords = cs.try_coords(flat(mats[a] * mats[b] - mats[b] * mats[a]));
      if (!coords) throw Error(kModule, "matrices do not span a Lie algebra");
      g.set_bracket(a, b, *coords);
    }
  return g;
}

bool is_subalgebra(const LieAlgebra& g, const Subspace& s) {
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = a + 1; b < s.dim(); ++b)
      if (!s.contains(g.bracket(s.basis()[a], s.basis()[b]))) return false;
  return true;
}

bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  for (Index i = 0; i < g.dim(); ++i)
    for (const auto& v : s.basis())
      if (!s.contains(g.bracket(unit_vec(i), v))) return false;
  return true;
}

// ---------------------------------------------------------------- modules

RationalMatrix LieModule::act(const SparseVec& x) const {
  RationalMatrix m(dim, dim);
  for (const auto& [i, c] : x.entries) m = m + scaled(action[i], c);
  return m;
}

LieModule trivial_module(const LieAlgebra& g, std::size_t dim) {
  LieModule m;
  m.dim = dim;
  m.action.assign(g.dim(), RationalMatrix(dim, dim));
  return m;
}

LieModule adjoint_module(const LieAlgebra& g) {
  LieModule m;
  m.dim = g.dim();
  for (Index i = 0; i < g.dim(); ++i) m.action.push_back(g.ad(unit_vec(i)));
  return m;
}

ValidationReport validate_module(const LieAlgebra& g, const LieModule& m) {
  ValidationReport rep;
  if (m.action.size() != g.dim()) {
    rep.violations.push_back("module has " + std::to_string(m.action.size()) + " action matrices, algebra has dim " +
                             std::to_string(g.dim()));
    return rep;
  }
  for (const auto& a : m.action)
    if (a.rows() != m.dim || a.cols() != m.dim) {
      rep.violations.push_back("action matrix has wrong shape");
      return rep;
    }
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = i + 1; j < g.dim(); ++j) {
      RationalMatrix lhs = m.act(g.bracket(i, j));
      RationalMatrix rhs = m.action[i] * m.action[j] - m.action[j] * m.action[i];
      if (lhs != rhs) rep.violations.push_back("rho([" + g.label(i) + "," + g.label(j) + "]) != [rho, rho]");
    }
  return rep;
}

LieModule transport_module(const LieModule& m, const std::vector<SparseVec>& basis) {
  LieModule out;
  out.dim = m.dim;
  for (const auto& b : basis) out.action.push_back(m.act(b));
  return out;
}

ModulePairing ModulePairing::scalar() {
  ModulePairing p;
  p.dim_m = p.dim_n = p.dim_p = 1;
  p.table.push_back(unit_vec(0));
  return p;
}

SparseVec ModulePairing::apply(const SparseVec& m, const SparseVec& n) const {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [i, a] : m.entries)
    for (const auto& [j, b] : n.entries) {
      const SparseVec& v = at(i, j);
      if (!v.empty()) terms.emplace_back(a * b, &v);
    }
  if (terms.empty()) return {};
  return combine(terms, dim_p);
}

ValidationReport validate_pairing(const LieAlgebra& g, const LieModule& m, const LieModule& n, const LieModule& p,
                                  const ModulePairing& pairing) {
  ValidationReport rep;
  if (pairing.dim_m != m.dim || pairing.dim_n != n.dim || pairing.dim_p != p.dim ||
      pairing.table.size() != m.dim * n.dim) {
    rep.violations.push_back("pairing shape mismatch");
    return rep;
  }
  for (Index x = 0; x < g.dim(); ++x)
    for (Index a = 0; a < m.dim; ++a)
      for (Index b = 0; b < n.dim; ++b) {
        SparseVec lhs = add(pairing.apply(m.action[x].col(a), unit_vec(b)), pairing.apply(unit_vec(a), n.action[x].col(b)));
        SparseVec rhs = p.action[x].apply(pairing.at(a, b));
        if (lhs != rhs)
          rep.violations.push_back("pairing not equivariant at x=" + g.label(x) + ", m=" + std::to_string(a) +
                                   ", n=" + std::to_string(b));
      }
  return rep;
}

// ---------------------------------------------------------------- triples

namespace {

// Builds the linear system for X (π(e_j) = Σ_a X[a][j] u_a), unknown a*N + j.
struct ProjectionSystem {
  RationalMatrix a;
  SparseVec rhs;
};

ProjectionSystem projection_system(const LieAlgebra& g, const Subspace& k, const Subspace& ideal, const Subspace& ik) {
  const std::size_t n = g.dim(), di = ideal.dim();
  const auto& u = ideal.basis();
  std::vector<Triplet> t;
  SparseVec rhs;
  Index row = 0;
  auto var = [&](std::size_t a, std::size_t j) { return static_cast<Index>(a * n + j); };

  // π|_I = id
  for (std::size_t b = 0; b < di; ++b)
    for (std::size_t a = 0; a < di; ++a, ++row) {
      for (const auto& [j, x] : u[b].entries) t.push_back({row, var(a, j), x});
      if (a == b) rhs.entries.emplace_back(row, Rational(1));
    }

  // π(k) ⊆ I_k
  std::vector<SparseVec> ik_coords;
  for (const auto& z : ik.basis()) ik_coords.push_back(ideal.coords(z));
  Subspace annihilator = kernel_basis(RationalMatrix::from_rows(di, ik_coords));
  for (const auto& kc : k.basis())
    for (const auto& nv : annihilator.basis()) {
      for (const auto& [a, na] : nv.entries)
        for (const auto& [j, kj] : kc.entries) t.push_back({row, var(a, j), na * kj});
      ++row;
    }

  // k-equivariance: π([x, e_j]) = [x, π(e_j)]
  for (const auto& x : k.basis()) {
    std::vector<SparseVec> ax(di);  // coords of [x, u_a]
    for (std::size_t a = 0; a < di; ++a) ax[a] = ideal.coords(g.bracket(x, u[a]));
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec xe = g.bracket(x, unit_vec(static_cast<Index>(j)));
      for (std::size_t b = 0; b < di; ++b, ++row) {
        for (const auto& [l, c] : xe.entries) t.push_back({row, var(b, l), c});
        for (std::size_t a = 0; a < di; ++a) {
          Rational c = ax[a].at(static_cast<Index>(b));
          if (sgn(c) != 0) t.push_back({row, var(a, j), -c});
        }
      }
    }
  }

  // [(1 - π) e_j, z] = 0 for z ∈ I_k
  for (const auto& z : ik.basis()) {
    std::vector<SparseVec> uz(di);
    for (std::size_t a = 0; a < di; ++a) uz[a] = ideal.coords(g.bracket(u[a], z));
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec ez = ideal.coords(g.bracket(unit_vec(static_cast<Index>(j)), z));
      for (std::size_t b = 0; b < di; ++b, ++row) {
        for (std::size_t a = 0; a < di; ++a) {
          Rational c = uz[a].at(static_cast<Index>(b));
          if (sgn(c) != 0) t.push_back({row, var(a, j), c});
        }
        Rational r = ez.at(static_cast<Index>(b));
        if (sgn(r) != 0) rhs.entries.emplace_back(row, r);
      }
    }
  }
  return {RationalMatrix::from_triplets(row, di * n, std::move(t)), rhs};
}

RationalMatrix projection_matrix(const Subspace& ideal, std::size_t n, const SparseVec& x) {
  std::vector<std::vector<std::pair<Rational, const SparseVec*>>> terms(n);
  for (const auto& [v, c] : x.entries) terms[v % n].emplace_back(c, &ideal.basis()[v / n]);
  std::vector<SparseVec> cols(n);
  for (std::size_t j = 0; j < n; ++j)
    if (!terms[j].empty()) cols[j] = combine(terms[j], n);
  return RationalMatrix::from_columns(n, cols);
}

void check_inputs(const LieAlgebra& g, const Subspace& k, const Subspace& ideal) {
  if (!is_subalgebra(g, k)) throw Error(kModule, "k is not a subalgebra");
  if (!is_ideal(g, ideal)) throw Error(kModule, "ideal is not an ideal");
}

TripleData assemble(const LieAlgebra& g, Subspace k, Subspace ideal, Subspace ik, RationalMatrix pi) {
  const std::size_t n = g.dim();
  TripleData t;
  t.g = g;
  t.k = std::move(k);
  t.ideal = std::move(ideal);
  t.i_k = std::move(ik);
  t.pi = std::move(pi);
  t.complement_J = kernel_basis(t.pi);

  Subspace jk = intersection(t.complement_J, t.k);
  if (jk.dim() + t.i_k.dim() != t.k.dim()) throw Error(kModule, "no equivariant complement: J ∩ k does not complement I_k in k");
  Subquotient il(t.ideal, t.i_k), jl(t.complement_J, jk);

  Frame& f = t.frame;
  f.n_jk = jk.dim();
  f.n_ik = t.i_k.dim();
  f.n_jl = jl.dim();
  f.n_il = il.dim();
  for (const auto& v : jk.basis()) f.basis.push_back(v);
  for (const auto& v : t.i_k.basis()) f.basis.push_back(v);
  for (const auto& v : jl.representatives()) f.basis.push_back(v);
  for (const auto& v : il.representatives()) f.basis.push_back(v);
  if (f.basis.size() != n) throw Error(kModule, "adapted frame is not a basis");
  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    for (const auto& v : f.basis) {
      if (v.nnz() == 1 && v.entries[0].second == 1) {
        labels.push_back(g.label(v.entries[0].first));
      } else {
        std::string s;
        for (const auto& [i, c] : v.entries)
          s += (s.empty() ? "" : "+") + (c == 1 ? std::string() : to_string(c) + "*") + g.label(i);
        labels.push_back(s);
      }
    }
  }
  f.coords = CoordinateSystem(n, f.basis);
  f.algebra = change_basis(g, f.basis, labels);

  ValidationReport rep = validate_triple(t);
  if (!rep.ok()) throw Error(kModule, "no equivariant complement: " + rep.violations.front());
  return t;
}

}  // namespace

ProjectionSolutions projection_solutions(const LieAlgebra& g, const Subspace& k, const Subspace& ideal) {
  check_inputs(g, k, ideal);
  Subspace ik = intersection(ideal, k);
  ProjectionSystem sys = projection_system(g, k, ideal, ik);
  auto x = solve(sys.a, sys.rhs);
  if (!x) throw Error(kModule, "no equivariant complement: projection system is inconsistent");
  ProjectionSolutions out;
  out.particular = projection_matrix(ideal, g.dim(), *x);
  Subspace hom = kernel_basis(sys.a);
  for (const auto& h : hom.basis()) out.homogeneous.push_back(projection_matrix(ideal, g.dim(), h));
  return out;
}

TripleData build_triple(const LieAlgebra& g, const std::vector<SparseVec>& k_basis,
                        const std::vector<SparseVec>& ideal_basis) {
  Subspace k = Subspace::span(g.dim(), k_basis);
  Subspace ideal = Subspace::span(g.dim(), ideal_basis);
  check_inputs(g, k, ideal);
  Subspace ik = intersection(ideal, k);
  ProjectionSystem sys = projection_system(g, k, ideal, ik);
  auto x = solve(sys.a, sys.rhs);
  if (!x) throw Error(kModule, "no equivariant complement: projection system is inconsistent");
  return assemble(g, k, ideal, ik, projection_matrix(ideal, g.dim(), *x));
}

TripleData build_triple_with_projection(const LieAlgebra& g, const std::vector<SparseVec>& k_basis,
                                        const std::vector<SparseVec>& ideal_basis, const RationalMatrix& pi) {
  Subspace k = Subspace::span(g.dim(), k_basis);
  Subspace ideal = Subspace::span(g.dim(), ideal_basis);
  check_inputs(g, k, ideal);
  Subspace ik = intersection(ideal, k);
  if (pi.rows() != g.dim() || pi.cols() != g.dim()) throw Error(kModule, "projection has wrong shape");
  return assemble(g, k, ideal, ik, pi);
}

std::pair<SparseVec, SparseVec> project_star(const TripleData& t, const SparseVec& x) {
  SparseVec star = t.pi.apply(x);
  return {star, axpy(x, Rational(-1), star)};
}

ValidationReport validate_triple(const TripleData& t) {
  ValidationReport rep;
  const LieAlgebra& g = t.g;
  const std::size_t n = g.dim();
  if (t.pi * t.pi != t.pi) rep.violations.push_back("pi is not idempotent");
  for (const auto& u : t.ideal.basis())
    if (t.pi.apply(u) != u) rep.violations.push_back("pi is not the identity on I");
  for (Index j = 0; j < n; ++j)
    if (!t.ideal.contains(t.pi.col(j))) rep.violations.push_back("pi does not land in I");
  for (const auto& x : t.k.basis()) {
    if (!t.i_k.contains(t.pi.apply(x))) rep.violations.push_back("pi(k) not contained in I_k");
    for (Index j = 0; j < n; ++j) {
      SparseVec y = unit_vec(j);
      if (t.pi.apply(g.bracket(x, y)) != g.bracket(x, t.pi.apply(y)))
        rep.violations.push_back("pi is not k-equivariant at " + g.label(j));
    }
  }
  for (const auto& jv : t.complement_J.basis())
    for (const auto& z : t.i_k.basis())
      if (!g.bracket(jv, z).empty()) rep.violations.push_back("[J, I_k] != 0");
  if (t.complement_J.dim() + t.ideal.dim() != n || intersection(t.complement_J, t.ideal).dim() != 0)
    rep.violations.push_back("I and J are not complementary");
  for (const auto& x : t.k.basis())
    for (const auto& jv : t.complement_J.basis())
      if (!t.complement_J.contains(g.bracket(x, jv))) rep.violations.push_back("J is not k-stable");
  return rep;
}

}  // namespace hsc
