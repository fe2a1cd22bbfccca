#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsc/catalog.hpp"
#include "hsc/lie.hpp"

using namespace hsc;

namespace {

SparseVec e(Index i) { return unit_vec(i); }

std::vector<SparseVec> units(std::initializer_list<Index> idx) {
  std::vector<SparseVec> v;
  for (Index i : idx) v.push_back(unit_vec(i));
  return v;
}

}  // namespace

TEST_CASE("validate_algebra") {
  CHECK(validate_algebra(catalog::abelian(4)).ok());
  auto g = catalog::sl2();
  CHECK(validate_algebra(g).ok());
  CHECK(g.bracket(0, 1) == scaled(e(1), 2));
  CHECK(g.bracket(0, 2) == scaled(e(2), -2));
  CHECK(g.bracket(1, 2) == e(0));

  auto bad = g;
  bad.set_bracket(1, 2, e(1));  // [e,f] = e
  auto rep = validate_algebra(bad);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].find("jacobi") != std::string::npos);

  auto skew = g;
  skew.set_raw(1, 2, e(0));
  skew.set_raw(2, 1, e(0));
  CHECK_FALSE(validate_algebra(skew).ok());

  CHECK(validate_algebra(catalog::sl2_plane()).ok());
  CHECK(validate_algebra(direct_product(g, g)).ok());
}

TEST_CASE("validate_module") {
  auto g = catalog::sl2();
  CHECK(validate_module(g, trivial_module(g)).ok());
  CHECK(validate_module(g, adjoint_module(g)).ok());
  auto m = adjoint_module(g);
  m.action[1] = scaled(m.action[1], Rational(-1));
  CHECK_FALSE(validate_module(g, m).ok());
  CHECK(validate_pairing(g, trivial_module(g), trivial_module(g), trivial_module(g), ModulePairing::scalar()).ok());
}

TEST_CASE("change of basis keeps the algebra valid and recovers brackets") {
  auto g = catalog::sl2();
  std::vector<SparseVec> basis = {add(e(1), e(2)), e(0), axpy(e(1), Rational(-1), e(2))};
  auto h = change_basis(g, basis);
  CHECK(validate_algebra(h).ok());
  CoordinateSystem cs(3, basis);
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b) CHECK(cs.vector_of(h.bracket(a, b)) == g.bracket(basis[a], basis[b]));
}

TEST_CASE("build_triple degenerate cases") {
  SUBCASE("k = 0: coordinate projection") {
    auto g = catalog::abelian(3);
    auto t = build_triple(g, {}, {e(0)});
    CHECK(t.pi == RationalMatrix::from_triplets(3, 3, {{0, 0, Rational(1)}}));
    CHECK(t.complement_J == Subspace::span(3, units({1, 2})));
  }
  SUBCASE("I = g: pi is the identity") {
    auto g = catalog::sl2();
    auto t = build_triple(g, {e(0)}, units({0, 1, 2}));
    CHECK(t.pi == RationalMatrix::identity(3));
    CHECK(t.complement_J.dim() == 0);
    CHECK(t.i_k == t.k);
  }
  SUBCASE("sl2, k = h, I = 0") {
    auto g = catalog::sl2();
    auto t = build_triple(g, {e(0)}, {});
    CHECK(t.pi.is_zero());
    CHECK(t.complement_J == Subspace::full(3));
    CHECK(t.frame.n_jk == 1);
    CHECK(t.frame.n_jl == 2);
  }
}

TEST_CASE("build_triple on sl2 x sl2 with I = first factor, k = h x h") {
  auto g = direct_product(catalog::sl2(), catalog::sl2());
  auto t = build_triple(g, {e(0), e(3)}, units({0, 1, 2}));
  CHECK(validate_triple(t).ok());
  CHECK(t.i_k.dim() == 1);
  for (const auto& x : t.k.basis()) {
    auto [star, plus] = project_star(t, x);
    CHECK(t.i_k.contains(star));
    CHECK(add(star, plus) == x);
  }
  for (Index j = 0; j < g.dim(); ++j) {
    auto [star, plus] = project_star(t, e(j));
    CHECK(t.ideal.contains(star));
    CHECK(t.complement_J.contains(plus));
  }
  // adapted frame: J_k, I_k, J_L, I_L
  CHECK(t.frame.n_jk == 1);
  CHECK(t.frame.n_ik == 1);
  CHECK(t.frame.n_jl == 2);
  CHECK(t.frame.n_il == 2);
  CHECK(validate_algebra(t.frame.algebra).ok());
}

TEST_CASE("projection solutions can be non-unique") {
  auto g = catalog::abelian(2);
  auto sols = projection_solutions(g, Subspace(2), Subspace::span(2, {e(0)}));
  REQUIRE(sols.homogeneous.size() == 1);
  auto pi2 = sols.particular + sols.homogeneous[0];
  CHECK(pi2 != sols.particular);
  auto t1 = build_triple(g, {}, {e(0)});
  auto t2 = build_triple_with_projection(g, {}, {e(0)}, pi2);
  CHECK(t1.complement_J != t2.complement_J);
  CHECK(validate_triple(t2).ok());
}

TEST_CASE("build_triple errors") {
  LieAlgebra g(2, {"x", "y"});
  g.set_bracket(0, 1, e(1));  // [x,y] = y
  CHECK_THROWS_WITH_AS(build_triple(g, {e(1)}, {e(1)}), doctest::Contains("no equivariant complement"), Error);
  CHECK_NOTHROW(build_triple(g, {e(0)}, {e(1)}));
  auto s = catalog::sl2();
  CHECK_THROWS_WITH_AS(build_triple(s, {e(1), e(2)}, {}), doctest::Contains("subalgebra"), Error);
  CHECK_THROWS_WITH_AS(build_triple(s, {}, {e(1)}), doctest::Contains("ideal"), Error);
}
