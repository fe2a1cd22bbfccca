#include "hsc/roots.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

namespace hsc {

namespace {

const char* kModule = "bk";

int height(const Root& r) {
  int h = 0;
  for (int x : r) h += x;
  return h;
}

std::string root_label(const Root& r) {
  std::string s;
  for (int x : r) s += std::to_string(x);
  return s;
}

SparseVec flatten(const RationalMatrix& m) {
  SparseVec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r).entries) v.push(static_cast<Index>(r * m.cols() + c), x);
  return v;
}

RationalMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j, int s = 1) {
  return RationalMatrix::from_triplets(n, n, {{static_cast<Index>(i), static_cast<Index>(j), Rational(s)}});
}

// Algebra of matrices with ω(X) = -X^T as Chevalley involution.
std::pair<LieAlgebra, RationalMatrix> matrix_model(const std::vector<RationalMatrix>& mats) {
  LieAlgebra g = lie_algebra_from_matrices(mats);
  std::vector<SparseVec> flat;
  for (const auto& m : mats) flat.push_back(flatten(m));
  const std::size_t n = mats.front().rows();
  CoordinateSystem cs(n * n, flat);
  std::vector<SparseVec> cols;
  for (const auto& m : mats) cols.push_back(cs.coords(flatten(scaled(m.transpose(), Rational(-1)))));
  return {g, RationalMatrix::from_columns(mats.size(), cols)};
}

// G2 = sl3 ⊕ V ⊕ V*. Basis: h1, h2, E12, E13, E21, E23, E31, E32, v1..v3, φ1..φ3.
std::pair<LieAlgebra, RationalMatrix> g2_model() {
  using M3 = std::array<std::array<Rational, 3>, 3>;
  const std::array<std::pair<int, int>, 6> off = {{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
  auto to_mat = [&](Index i) {
    M3 m{};
    if (i == 0) m[0][0] = 1, m[1][1] = -1;
    else if (i == 1) m[1][1] = 1, m[2][2] = -1;
    else m[off[i - 2].first][off[i - 2].second] = 1;
    return m;
  };
  auto from_mat = [&](const M3& m) {
    SparseVec v;
    v.push(0, m[0][0]);
    v.push(1, -m[2][2]);
    for (std::size_t k = 0; k < off.size(); ++k) v.push(static_cast<Index>(2 + k), m[off[k].first][off[k].second]);
    return v;
  };
  auto eps = [](int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;  // cyclic (0,1,2) → +1
  };
  const int c_vv = 2, c_ff = -2, c_vf = 3;
  LieAlgebra g(14);
  auto V = [](int i) { return static_cast<Index>(8 + i); };
  auto F = [](int i) { return static_cast<Index>(11 + i); };
  for (Index a = 0; a < 8; ++a) {
    M3 x = to_mat(a);
    for (Index b = a + 1; b < 8; ++b) {
      M3 y = to_mat(b), c{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) c[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
      g.set_bracket(a, b, from_mat(c));
    }
    for (int k = 0; k < 3; ++k) {
      SparseVec xv, xf;
      for (int i = 0; i < 3; ++i) xv.push(V(i), x[i][k]);
      for (int i = 0; i < 3; ++i) xf.push(F(i), -x[k][i]);
      g.set_bracket(a, V(k), xv);
      g.set_bracket(a, F(k), xf);
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i < j) {
        SparseVec vv, ff;
        for (int k = 0; k < 3; ++k) {
          if (eps(i, j, k)) vv.push(F(k), Rational(c_vv * eps(i, j, k)));
          if (eps(i, j, k)) ff.push(V(k), Rational(c_ff * eps(i, j, k)));
        }
        g.set_bracket(V(i), V(j), vv);
        g.set_bracket(F(i), F(j), ff);
      }
      M3 m{};
      m[i][j] += c_vf;
      if (i == j)
        for (int k = 0; k < 3; ++k) m[k][k] -= Rational(c_vf) / 3;
      g.set_bracket(V(i), F(j), from_mat(m));
    }
  // ω: X ↦ -X^T, v_i ↦ -φ_i, φ_i ↦ -v_i
  std::vector<Triplet> t;
  t.push_back({0, 0, Rational(-1)});
  t.push_back({1, 1, Rational(-1)});
  for (std::size_t k = 0; k < off.size(); ++k) {
    auto [i, j] = off[k];
    std::size_t kt = std::find(off.begin(), off.end(), std::make_pair(j, i)) - off.begin();
    t.push_back({static_cast<Index>(2 + kt), static_cast<Index>(2 + k), Rational(-1)});
  }
  for (int i = 0; i < 3; ++i) {
    t.push_back({F(i), V(i), Rational(-1)});
    t.push_back({V(i), F(i), Rational(-1)});
  }
  return {g, RationalMatrix::from_triplets(14, 14, std::move(t))};
}

// Chevalley basis from a model with Chevalley involution ω and simple root vectors.
RootDatum from_model(const std::string& type, const LieAlgebra& m, const RationalMatrix& omega,
                     const std::vector<SparseVec>& simple_e) {
  if (!validate_algebra(m).ok()) throw Error(kModule, "model algebra for " + type + " fails validation");
  for (Index a = 0; a < m.dim(); ++a)
    for (Index b = 0; b < m.dim(); ++b)
      if (omega.apply(m.bracket(a, b)) != m.bracket(omega.col(a), omega.col(b)))
        throw Error(kModule, "model involution for " + type + " is not an automorphism");
  RootDatum rd;
  rd.type = type;
  rd.rank = static_cast<int>(simple_e.size());
  const int n = rd.rank;
  std::vector<SparseVec> sf, sh;
  for (const auto& e : simple_e) {
    sf.push_back(negate(omega.apply(e)));
    sh.push_back(m.bracket(e, sf.back()));
  }
  rd.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseVec b = m.bracket(sh[i], simple_e[j]);
      Rational c = 0;
      if (!b.empty() && sgn(simple_e[j].at(b.leading())) != 0) c = b.entries.front().second / simple_e[j].at(b.leading());
      if (b != scaled(simple_e[j], c) || c.get_den() != 1) throw Error(kModule, "simple root vectors are not weight vectors");
      rd.cartan[i][j] = static_cast<int>(c.get_num().get_si());
    }
  rd.positive = positive_roots(rd.cartan);
  std::map<Root, SparseVec> ev;
  for (const Root& r : rd.positive) {
    if (height(r) == 1) {
      ev[r] = simple_e[std::find(r.begin(), r.end(), 1) - r.begin()];
      continue;
    }
    // extraspecial pair: smallest simple α_i with r - α_i a root
    for (int i = 0; i < n; ++i) {
      Root b = r;
      --b[i];
      if (b[i] < 0 || !ev.count(b)) continue;
      int p = 0;
      for (Root c = b; c[i] > 0;) {
        --c[i];
        if (!ev.count(c)) break;
        ++p;
      }
      ev[r] = scaled(m.bracket(simple_e[i], ev[b]), Rational(1, p + 1));
      if (ev[r].empty()) throw Error(kModule, "vanishing root vector in " + type);
      break;
    }
  }
  std::vector<SparseVec> basis = sh;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("h" + std::to_string(i + 1));
  for (const Root& r : rd.positive) {
    basis.push_back(ev[r]);
    labels.push_back("e" + root_label(r));
  }
  for (const Root& r : rd.positive) {
    basis.push_back(negate(omega.apply(ev[r])));
    labels.push_back("f" + root_label(r));
  }
  if (basis.size() != m.dim()) throw Error(kModule, "root count does not match dimension for " + type);
  rd.g = change_basis(m, basis, labels);
  for (Index a = 0; a < rd.g.dim(); ++a)
    for (Index b = 0; b < rd.g.dim(); ++b)
      for (const auto& [i, x] : rd.g.bracket(a, b).entries)
        if (x.get_den() != 1) throw Error(kModule, "non-integral structure constant in " + type);
  if (!validate_algebra(rd.g).ok()) throw Error(kModule, type + " fails validation");
  return rd;
}

RootDatum type_a(int n) {
  const std::size_t s = n + 1;
  std::vector<RationalMatrix> mats;
  std::vector<SparseVec> simple;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      if (j == i + 1) simple.push_back(unit_vec(static_cast<Index>(mats.size())));
      mats.push_back(unit_matrix(s, i, j));
    }
  for (std::size_t i = 0; i + 1 < s; ++i) mats.push_back(unit_matrix(s, i, i) - unit_matrix(s, i + 1, i + 1));
  auto [g, omega] = matrix_model(mats);
  return from_model("A" + std::to_string(n), g, omega, simple);
}

RootDatum type_b2() {
  // sp4 for J = [[0, 1], [-1, 0]]; B2 labels: α1 = 2ε2 (long), α2 = ε1 - ε2 (short)
  auto E = [](std::size_t i, std::size_t j) { return unit_matrix(4, i - 1, j - 1); };
  std::vector<RationalMatrix> mats = {E(2, 4),           E(1, 2) - E(4, 3), E(1, 3),          E(1, 4) + E(2, 3),
                                      E(4, 2),           E(2, 1) - E(3, 4), E(3, 1),          E(4, 1) + E(3, 2),
                                      E(1, 1) - E(3, 3), E(2, 2) - E(4, 4)};
  auto [g, omega] = matrix_model(mats);
  return from_model("B2", g, omega, {unit_vec(0), unit_vec(1)});
}

RootDatum type_g2() {
  auto [g, omega] = g2_model();
  // α1 = ε1 (short, v1), α2 = ε2 - ε1 (long, E21)
  return from_model("G2", g, omega, {unit_vec(8), unit_vec(4)});
}

std::vector<int> reflect(const std::vector<int>& lambda, int i, const std::vector<std::vector<int>>& cartan) {
  std::vector<int> out = lambda;
  const int c = lambda[i];
  for (std::size_t j = 0; j < lambda.size(); ++j) out[j] -= c * cartan[j][i];
  return out;
}

// BFS orbit of a weight (fundamental-weight coordinates); distances by generator steps.
std::map<std::vector<int>, int> orbit(const std::vector<int>& start, const std::set<int>& gens,
                                      const std::vector<std::vector<int>>& cartan) {
  std::map<std::vector<int>, int> dist{{start, 0}};
  std::deque<std::vector<int>> queue{start};
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (int g : gens) {
      auto v = reflect(w, g - 1, cartan);
      if (dist.emplace(v, dist[w] + 1).second) queue.push_back(v);
    }
  }
  return dist;
}

std::vector<std::size_t> length_histogram(const std::map<std::vector<int>, int>& d) {
  std::vector<std::size_t> h;
  for (const auto& [w, l] : d) {
    if (h.size() <= static_cast<std::size_t>(l)) h.resize(l + 1, 0);
    ++h[l];
  }
  return h;
}

}  // namespace

long RootDatum::root_index(const Root& r) const {
  auto it = std::find(positive.begin(), positive.end(), r);
  return it == positive.end() ? -1 : it - positive.begin();
}

std::set<int> RootDatum::support(std::size_t a) const {
  std::set<int> s;
  for (int i = 0; i < rank; ++i)
    if (positive.at(a)[i] > 0) s.insert(i + 1);
  return s;
}

std::vector<Root> positive_roots(const std::vector<std::vector<int>>& cartan) {
  const int n = static_cast<int>(cartan.size());
  std::vector<Root> roots;
  std::set<Root> known;
  for (int i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    roots.push_back(r);
    known.insert(r);
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Root b = roots[k];
    for (int i = 0; i < n; ++i) {
      int p = 0;
      for (Root c = b;;) {
        --c[i];
        if (!known.count(c)) break;
        ++p;
      }
      int pairing = 0;
      for (int j = 0; j < n; ++j) pairing += b[j] * cartan[i][j];
      if (p - pairing > 0) {
        Root c = b;
        ++c[i];
        if (known.insert(c).second) roots.push_back(c);
      }
    }
    if (roots.size() > 1000) throw Error(kModule, "Cartan matrix is not of finite type");
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    return height(x) != height(y) ? height(x) < height(y) : x > y;
  });
  return roots;
}

std::vector<std::string> supported_types() { return {"A1", "A2", "A3", "A4", "B2", "G2"}; }

RootDatum build_root_datum(const std::string& type) {
  if (type == "A1") return type_a(1);
  if (type == "A2") return type_a(2);
  if (type == "A3") return type_a(3);
  if (type == "A4") return type_a(4);
  if (type == "B2") return type_b2();
  if (type == "G2") return type_g2();
  throw InputError(kModule, "unsupported root system type '" + type + "'");
}

WeylCounts weyl_counts(const RootDatum& rd, const std::set<int>& levi, const std::set<int>& K) {
  for (int i : K)
    if (i < 1 || i > rd.rank) throw InputError(kModule, "simple root label out of range");
  for (int i : levi)
    if (!K.count(i)) throw InputError(kModule, "levi set is not contained in K");
  std::set<int> all;
  for (int i = 1; i <= rd.rank; ++i) all.insert(i);
  const std::vector<int> rho(rd.rank, 1);
  WeylCounts w;
  w.W = orbit(rho, all, rd.cartan).size();
  w.W_P = orbit(rho, levi, rd.cartan).size();
  w.W_PK = orbit(rho, K, rd.cartan).size();
  w.W_over_P = w.W / w.W_P;
  w.W_over_PK = w.W / w.W_PK;
  w.WPK_over_WP = w.W_PK / w.W_P;
  std::vector<int> lp(rd.rank, 0), lk(rd.rank, 0);
  for (int i = 1; i <= rd.rank; ++i) {
    lp[i - 1] = levi.count(i) ? 0 : 1;
    lk[i - 1] = K.count(i) ? 0 : 1;
  }
  w.by_length_P = length_histogram(orbit(lp, all, rd.cartan));
  w.by_length_PK = length_histogram(orbit(lk, all, rd.cartan));
  return w;
}

}  // namespace hsc
