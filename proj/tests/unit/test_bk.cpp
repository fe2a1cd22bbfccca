#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

#include "hsc/bk.hpp"

#include <fstream>

using namespace hsc;

namespace {

const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(HSC_ORACLE);
    return nlohmann::json::parse(in);
  }();
  return j;
}

std::vector<std::size_t> dims(const nlohmann::json& j) { return j.get<std::vector<std::size_t>>(); }

std::vector<std::set<int>> subsets_of(const std::set<int>& s) {
  std::vector<int> v(s.begin(), s.end());
  std::vector<std::set<int>> out;
  for (unsigned m = 0; m < (1u << v.size()); ++m) {
    std::set<int> t;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (m >> i & 1) t.insert(v[i]);
    out.push_back(t);
  }
  return out;
}

std::set<int> complement(int rank, const std::set<int>& s) {
  std::set<int> c;
  for (int i = 1; i <= rank; ++i)
    if (!s.count(i)) c.insert(i);
  return c;
}

}  // namespace

TEST_CASE("instance invariants") {
  auto pd = make_parabolic(build_root_datum("A2"), {});
  for (const auto& t : subsets_of({1, 2})) {
    CAPTURE(format_set(t));
    BKInstance b = build_bk_instance(pd, t);
    CHECK(b.gk.dim() == 8);
    CHECK(validate_algebra(b.gk).ok());
    CHECK(intersection(b.u_tilde, b.l_delta).dim() == 0);
    CHECK(b.u_tilde.dim() == 2 * pd.roots_outside(b.K).size());
    CHECK(b.triple.frame.n_ik == 0);
  }
  // full support: g_K is the diagonal, ũ_K = 0
  BKInstance full = build_bk_instance(pd, {1, 2});
  CHECK(full.u_tilde.dim() == 0);
  CHECK(full.l_K_delta.dim() == 8);
  auto p1 = make_parabolic(build_root_datum("A2"), {1});
  CHECK(p1.m == 1);
  CHECK(p1.relabel == std::vector<int>{2, 1});
  CHECK_THROWS_AS(build_bk_instance(p1, {1}), InputError);
  CHECK_THROWS_AS(build_bk_instance(p1, {3}), InputError);
}

TEST_CASE("bk instances against the oracle") {
  for (const auto& [key, val] : oracle()["bk"].items()) {
    CAPTURE(key);
    // "A2 levi=[1] t=[]"
    const std::string type = key.substr(0, 2);
    auto parse = [&](const std::string& tag) {
      std::set<int> s;
      auto pos = key.find(tag + "=[") + tag.size() + 2;
      for (auto end = key.find(']', pos); pos < end; ++pos)
        if (std::isdigit(static_cast<unsigned char>(key[pos]))) s.insert(key[pos] - '0');
      return s;
    };
    auto pd = make_parabolic(build_root_datum(type), parse("levi"));
    BKInstance b = build_bk_instance(pd, parse("t"));
    CHECK(b.name() == key);
    HochschildSerre hs = bk_spectral(b);
    BKReport r = verify_structure(b, hs);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(r.betti == dims(val["betti"]));
    CHECK(r.sub_dims == dims(val["sub"]));
    CHECK(bk_cohomology(b).betti == r.betti);
    if (oracle()["quotient"].contains(key)) CHECK(r.quotient_dims == dims(oracle()["quotient"][key]));
  }
}

TEST_CASE("A2 full flag, t = {1}") {
  auto pd = make_parabolic(build_root_datum("A2"), {});
  BKInstance b = build_bk_instance(pd, {1});
  HochschildSerre hs = bk_spectral(b);
  BKReport r = verify_structure(b, hs);
  CHECK(r.degeneration_page == 2);
  CHECK(r.sub_dims == std::vector<std::size_t>{1, 0, 1});
  CHECK(r.quotient_dims == std::vector<std::size_t>{1, 0, 1, 0, 1});
  CHECK(poly_product(r.sub_dims, r.quotient_dims) == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});
  TensorDecomposition td = tensor_decomposition(hs);
  CHECK(td.ok());
  CHECK(td.ideal_equal);
  for (std::size_t n = 0; n < td.ker_i_star.size(); ++n) CHECK(td.ker_i_star[n] == td.ideal_a_plus[n]);
}

TEST_CASE("kostant invariants against the oracle") {
  for (const auto& [key, val] : oracle()["kostant"].items()) {
    const std::string type = key.substr(0, 2);
    if (type == "A3") continue;  // covered by the acceptance run
    CAPTURE(key);
    std::set<int> K;
    for (char c : key.substr(key.find('[')))
      if (std::isdigit(static_cast<unsigned char>(c))) K.insert(c - '0');
    auto pd = make_parabolic(build_root_datum(type), {});
    KostantRow row = kostant_table(pd, K);
    CHECK(row.invariant_dims == dims(val));
    CHECK(row.total_ok);
    CHECK(row.per_degree_match);
  }
}

TEST_CASE("B2 and G2 flag varieties") {
  for (const char* type : {"B2", "G2"}) {
    CAPTURE(type);
    auto rd = build_root_datum(type);
    for (const auto& levi : subsets_of({1, 2})) {
      if (levi.size() == 2) continue;
      auto pd = make_parabolic(rd, levi);
      for (const auto& t : subsets_of(complement(rd.rank, levi))) {
        CAPTURE(format_set(levi));
        CAPTURE(format_set(t));
        BKInstance b = build_bk_instance(pd, t);
        CHECK(bk_cohomology(b).total_dim() == weyl_counts(rd, levi, b.K).W_over_P);
      }
    }
  }
}
