#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsc/catalog.hpp"
#include "hsc/cochains.hpp"
#include "support.hpp"

using namespace hsc;

namespace {

// g ⊗ g → g by the bracket; equivariant by Jacobi.
ModulePairing bracket_pairing(const LieAlgebra& g) {
  ModulePairing p;
  p.dim_m = p.dim_n = p.dim_p = g.dim();
  for (Index a = 0; a < g.dim(); ++a)
    for (Index b = 0; b < g.dim(); ++b) p.table.push_back(g.bracket(a, b));
  return p;
}

struct Case {
  std::string name;
  LieAlgebra g;
  LieModule m;
};

std::vector<Case> absolute_cases() {
  auto sl2 = catalog::sl2();
  auto plane = catalog::sl2_plane();
  auto prod = direct_product(sl2, sl2);
  return {{"sl2/adjoint", sl2, adjoint_module(sl2)},
          {"sl2/trivial", sl2, trivial_module(sl2)},
          {"sl2 x Q2/adjoint", plane, adjoint_module(plane)},
          {"abelian3/trivial", catalog::abelian(3), trivial_module(catalog::abelian(3))},
          {"sl2xsl2/trivial", prod, trivial_module(prod)},
          {"gl2/adjoint", catalog::gl2(), adjoint_module(catalog::gl2())}};
}

}  // namespace

TEST_CASE("subset ranking matches colex enumeration") {
  SubsetIndex s(7);
  for (int n = 0; n <= 7; ++n) {
    CHECK(s.subsets(n).size() == s.count(n));
    for (std::size_t i = 0; i < s.subsets(n).size(); ++i) CHECK(s.rank(s.subsets(n)[i]) == i);
  }
}

TEST_CASE("differential on sl2 with trivial coefficients") {
  auto g = catalog::sl2();
  CochainSpace c(g, trivial_module(g));
  Cochain one{0, unit_vec(0)};
  CHECK(c.differential(one).coeffs.empty());
  Cochain hstar{1, {}};
  c.add_value(hstar, {0}, unit_vec(0));
  Cochain dh = c.differential(hstar);
  CHECK(c.evaluate(dh, {1, 2}) == SparseVec{{{0, Rational(-1)}}});
  CHECK(c.evaluate(dh, {2, 1}) == SparseVec{{{0, Rational(1)}}});
  CHECK(c.evaluate(dh, {0, 1}).empty());
}

TEST_CASE("d∘d = 0 and Cartan identity on absolute complexes") {
  std::mt19937_64 rng(testsupport::seed());
  for (const auto& cs : absolute_cases()) {
    CAPTURE(cs.name);
    REQUIRE(validate_module(cs.g, cs.m).ok());
    CochainSpace c(cs.g, cs.m);
    const int top = static_cast<int>(cs.g.dim());
    for (int n = 0; n + 1 <= top; ++n) CHECK((c.differential(n + 1) * c.differential(n)).is_zero());
    for (int trial = 0; trial < 3; ++trial) {
      SparseVec z = testsupport::random_vec(rng, cs.g.dim());
      for (int n = 0; n <= top; ++n) {
        RationalMatrix lhs = c.theta(z, n);
        RationalMatrix rhs = c.differential(n - 1) * c.iota(z, n);
        if (n < top) rhs = rhs + c.iota(z, n + 1) * c.differential(n);
        if (n == 0) rhs = c.iota(z, 1) * c.differential(0);
        CHECK(lhs == rhs);
        if (n < top) CHECK(c.differential(n) * c.theta(z, n) == c.theta(z, n + 1) * c.differential(n));
      }
    }
  }
}

TEST_CASE("theta on abelian algebras with trivial coefficients vanishes") {
  auto g = catalog::abelian(3);
  CochainSpace c(g, trivial_module(g));
  for (int n = 0; n <= 3; ++n) CHECK(c.theta(add(unit_vec(0), unit_vec(2)), n).is_zero());
  CHECK(c.iota(Cochain{0, unit_vec(0)}.coeffs, 0).rows() == 0);
}

TEST_CASE("theta commutes with d on C(I;M) for an ideal") {
  auto g = catalog::sl2_plane();
  auto m = adjoint_module(g);
  CochainSpace ci(g, {3, 4}, m);
  for (Index x = 0; x < g.dim(); ++x)
    for (int n = 0; n < 2; ++n)
      CHECK(ci.differential(n) * ci.theta(unit_vec(x), n) == ci.theta(unit_vec(x), n + 1) * ci.differential(n));
}

TEST_CASE("relative bases") {
  auto g = catalog::sl2();
  auto rc = relative_complex(g, {unit_vec(0)}, trivial_module(g));
  CHECK(rc.dim(0) == 1);
  CHECK(rc.dim(1) == 0);
  CHECK(rc.dim(2) == 1);
  CHECK(rc.dim(3) == 0);

  auto full = relative_complex(g, {}, adjoint_module(g));
  for (int n = 0; n <= 3; ++n) CHECK(full.dim(n) == full.space().dim(n));

  // basis vectors are killed by θ_x for x in k
  auto adj = relative_complex(g, {unit_vec(0)}, adjoint_module(g));
  for (int n = 0; n <= adj.top_degree(); ++n)
    for (const auto& b : adj.relative(n).basis()) CHECK(adj.space().theta(unit_vec(0), n).apply(b).empty());
}

TEST_CASE("cup product: unit, Leibniz, relative closure") {
  std::mt19937_64 rng(testsupport::seed() + 7);
  for (const auto& cs : absolute_cases()) {
    CAPTURE(cs.name);
    CochainSpace c(cs.g, cs.m);
    bool adjoint = cs.m.dim == cs.g.dim() && cs.m.dim > 1 && !cs.m.action[0].is_zero();
    ModulePairing pr = adjoint ? bracket_pairing(cs.g) : ModulePairing::scalar();
    if (!adjoint && cs.m.dim != 1) continue;
    CHECK(validate_pairing(cs.g, cs.m, cs.m, cs.m, pr).ok());
    const int top = static_cast<int>(cs.g.dim());
    if (!adjoint) {
      CochainSpace c1(cs.g, cs.m);
      for (int q = 0; q <= top; ++q) {
        SparseVec b = testsupport::random_vec(rng, c.dim(q));
        CHECK(cup(c, 0, unit_vec(0), c, q, b, pr, c) == b);
      }
    }
    for (int p = 0; p <= top; ++p)
      for (int q = 0; p + q + 1 <= top; ++q) {
        SparseVec a = testsupport::random_vec(rng, c.dim(p));
        SparseVec b = testsupport::random_vec(rng, c.dim(q));
        SparseVec lhs = c.differential(p + q).apply(cup(c, p, a, c, q, b, pr, c));
        SparseVec rhs = add(cup(c, p + 1, c.differential(p).apply(a), c, q, b, pr, c),
                            scaled(cup(c, p, a, c, q + 1, c.differential(q).apply(b), pr, c), parity_sign(p)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("cohomology of small algebras") {
  auto g = catalog::sl2();
  auto pr = ModulePairing::scalar();
  auto abs = cohomology(relative_complex(g, {}, trivial_module(g)), &pr);
  CHECK(abs.betti == std::vector<std::size_t>{1, 0, 0, 1});

  auto rc = relative_complex(g, {unit_vec(0)}, trivial_module(g));
  auto rel = cohomology(rc, &pr);
  CHECK(rel.betti == std::vector<std::size_t>{1, 0, 1});
  CHECK(rel.product(2, unit_vec(0), 2, unit_vec(0)).empty());
  CHECK(rel.product(0, unit_vec(0), 2, unit_vec(0)) == unit_vec(0));

  for (std::size_t d = 0; d <= 4; ++d) {
    auto a = catalog::abelian(d);
    auto h = cohomology(relative_complex(a, {}, trivial_module(a)));
    std::vector<std::size_t> expect;
    SubsetIndex s(d);
    for (std::size_t n = 0; n <= d; ++n) expect.push_back(s.count(static_cast<int>(n)));
    CHECK(h.betti == expect);
  }
}

TEST_CASE("ring axioms and Poincaré duality on unimodular instances") {
  auto sl2 = catalog::sl2();
  auto prod = direct_product(sl2, sl2);
  auto pr = ModulePairing::scalar();
  std::vector<RelativeComplex> cs;
  cs.push_back(relative_complex(sl2, {}, trivial_module(sl2)));
  cs.push_back(relative_complex(sl2, {unit_vec(0)}, trivial_module(sl2)));
  cs.push_back(relative_complex(prod, {}, trivial_module(prod)));
  cs.push_back(relative_complex(prod, {unit_vec(0), unit_vec(3)}, trivial_module(prod)));
  std::vector<std::vector<std::size_t>> expect = {{1, 0, 0, 1}, {1, 0, 1}, {1, 0, 0, 2, 0, 0, 1}, {1, 0, 2, 0, 1}};
  for (std::size_t c = 0; c < cs.size(); ++c) {
    auto r = cohomology(cs[c], &pr);
    CHECK(r.betti == expect[c]);
    const int top = cs[c].top_degree();
    for (int n = 0; n <= top; ++n) CHECK(r.betti[n] == r.betti[top - n]);
    for (int p = 0; p <= top; ++p)
      for (int q = 0; p + q <= top; ++q)
        for (std::size_t i = 0; i < r.betti[p]; ++i)
          for (std::size_t j = 0; j < r.betti[q]; ++j) {
            CHECK(r.product(p, unit_vec(i), q, unit_vec(j)) ==
                  scaled(r.product(q, unit_vec(j), p, unit_vec(i)), parity_sign(p * q)));
            if (p == 0) CHECK(r.product(p, unit_vec(i), q, unit_vec(j)) == unit_vec(j));
            for (int s = 0; p + q + s <= top; ++s)
              for (std::size_t k = 0; k < r.betti[s]; ++k) {
                auto ab = r.product(p, unit_vec(i), q, unit_vec(j));
                auto bc = r.product(q, unit_vec(j), s, unit_vec(k));
                CHECK(r.product(p + q, ab, s, unit_vec(k)) == r.product(p, unit_vec(i), q + s, bc));
              }
          }
  }
}
