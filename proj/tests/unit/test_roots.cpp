#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsc/roots.hpp"

using namespace hsc;

TEST_CASE("root systems") {
  struct Case {
    const char* type;
    std::size_t dim, pos;
  };
  for (auto c : {Case{"A1", 3, 1}, Case{"A2", 8, 3}, Case{"A3", 15, 6}, Case{"A4", 24, 10}, Case{"B2", 10, 4},
                 Case{"G2", 14, 6}}) {
    CAPTURE(c.type);
    RootDatum rd = build_root_datum(c.type);
    CHECK(rd.g.dim() == c.dim);
    CHECK(rd.n_positive() == c.pos);
    CHECK(validate_algebra(rd.g).ok());
    // [h_i, e_α] = α(h_i) e_α, [e_α, f_α] ∈ Cartan
    for (std::size_t a = 0; a < rd.n_positive(); ++a) {
      for (int i = 0; i < rd.rank; ++i) {
        int w = 0;
        for (int j = 0; j < rd.rank; ++j) w += rd.positive[a][j] * rd.cartan[i][j];
        CHECK(rd.g.bracket(rd.h_index(i), rd.e_index(a)) == scaled(unit_vec(rd.e_index(a)), w));
        CHECK(rd.g.bracket(rd.h_index(i), rd.f_index(a)) == scaled(unit_vec(rd.f_index(a)), -w));
      }
      for (const auto& [k, x] : rd.g.bracket(rd.e_index(a), rd.f_index(a)).entries) CHECK(k < rd.rank);
    }
  }
}

TEST_CASE("cartan matrices") {
  CHECK(build_root_datum("A2").cartan == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  auto b2 = build_root_datum("B2").cartan;
  CHECK(b2[0][0] == 2);
  CHECK(b2[0][1] * b2[1][0] == 2);
  auto g2 = build_root_datum("G2").cartan;
  CHECK(g2[0][1] * g2[1][0] == 3);
  CHECK(positive_roots(g2).back() == Root{3, 2});
  CHECK_THROWS_AS(build_root_datum("E8"), InputError);
}

TEST_CASE("weyl counts") {
  auto a2 = build_root_datum("A2");
  auto w = weyl_counts(a2, {}, {});
  CHECK(w.W == 6);
  CHECK(w.W_over_P == 6);
  CHECK(weyl_counts(a2, {1}, {1}).W_over_P == 3);
  CHECK(weyl_counts(a2, {}, {1}).WPK_over_WP == 2);
  auto a3 = weyl_counts(build_root_datum("A3"), {}, {2});
  CHECK(a3.W == 24);
  CHECK(a3.by_length_P == std::vector<std::size_t>{1, 3, 5, 6, 5, 3, 1});
  CHECK(a3.by_length_PK == std::vector<std::size_t>{1, 2, 3, 3, 2, 1});
  CHECK(weyl_counts(build_root_datum("B2"), {}, {}).W == 8);
  CHECK(weyl_counts(build_root_datum("G2"), {}, {}).W == 12);
  CHECK_THROWS_AS(weyl_counts(a2, {1}, {2}), InputError);
}
