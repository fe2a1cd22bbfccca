// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
#include "../common/corpus.hpp"
#include "hsc/bk.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace hsc;
using testsupport::TripleCase;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  std::vector<std::string> failures;
  std::string note;
  void fail(const std::string& where, const std::vector<std::string>& f) {
    for (const auto& s : f) failures.push_back(where + ": " + s);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(HSC_ORACLE);
    return nlohmann::json::parse(in);
  }();
  return j;
}

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

std::set<int> all_roots(int rank) {
  std::set<int> s;
  for (int i = 1; i <= rank; ++i) s.insert(i);
  return s;
}

std::set<int> minus(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> c;
  for (int x : a)
    if (!b.count(x)) c.insert(x);
  return c;
}

TripleCase as_case(const BKInstance& b) {
  std::vector<SparseVec> k, ideal;
  for (Index i : b.k_indices) k.push_back(unit_vec(i));
  for (Index i : b.ideal_indices) ideal.push_back(unit_vec(i));
  return {b.name(), b.gk, k, ideal, trivial_module(b.gk), true};
}

// Small triples plus every A1 and A2 BK instance (all parabolics, all supports).
std::vector<TripleCase> corpus() {
  std::vector<TripleCase> c = testsupport::small_triples();
  for (const char* type : {"A1", "A2"}) {
    RootDatum rd = build_root_datum(type);
    for (const auto& levi : subsets_of(all_roots(rd.rank))) {
      if (static_cast<int>(levi.size()) == rd.rank) continue;
      ParabolicDatum pd = make_parabolic(rd, levi);
      for (const auto& t : subsets_of(minus(all_roots(rd.rank), levi))) c.push_back(as_case(build_bk_instance(pd, t)));
    }
  }
  return c;
}

std::string key(const std::string& type, const std::set<int>& s) { return type + " K=" + format_set(s); }

std::vector<std::size_t> dims(const nlohmann::json& j) { return j.get<std::vector<std::size_t>>(); }

// ---------------------------------------------------------------- criteria

Outcome complex_identities(const std::vector<TripleCase>& cs) {
  Outcome o;
  for (const auto& c : cs) {
    CochainSpace sp(c.g, c.m);
    const int top = static_cast<int>(c.g.dim());
    for (int n = 0; n + 1 <= top; ++n)
      o.expect((sp.differential(n + 1) * sp.differential(n)).is_zero(), c.name + ": d∘d != 0 at " + std::to_string(n));
    for (Index z = 0; z < c.g.dim(); ++z)
      for (int n = 0; n <= top; ++n) {
        RationalMatrix lhs = sp.theta(unit_vec(z), n);
        RationalMatrix rhs(sp.dim(n), sp.dim(n));
        if (n > 0) rhs = sp.differential(n - 1) * sp.iota(unit_vec(z), n);
        if (n < top) rhs = rhs + sp.iota(unit_vec(z), n + 1) * sp.differential(n);
        o.expect(lhs == rhs, c.name + ": θ != d i + i d for basis vector " + std::to_string(z) + " in degree " +
                                 std::to_string(n));
      }
    RelativeComplex rc = relative_complex(c.g, c.k, c.m);
    for (int n = 0; n + 1 <= rc.top_degree(); ++n)
      o.expect((rc.d(n + 1) * rc.d(n)).is_zero(), c.name + ": relative d∘d != 0");
  }
  o.note = std::to_string(cs.size()) + " triples";
  return o;
}

}  // namespace

int main() {
  const std::vector<TripleCase> cs = corpus();
  std::vector<std::pair<TripleCase, std::unique_ptr<HochschildSerre>>> built;
  auto hs_corpus = [&]() -> const auto& {
    if (built.empty())
      for (const auto& c : cs) built.emplace_back(c, std::make_unique<HochschildSerre>(c.build()));
    return built;
  };
  const std::uint64_t seed = 20240611ULL;
  int failed = 0;

  auto report = [&](int n, const std::string& title, double limit_s, const std::function<Outcome()>& f) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) o.failures.push_back("took " + std::to_string(secs) + " s");
    const bool ok = o.failures.empty();
    if (!ok) ++failed;
    std::printf("criterion %d: %s  %s (%.2f s%s%s)\n", n, ok ? "PASS" : "FAIL", title.c_str(), secs,
                o.note.empty() ? "" : ", ", o.note.c_str());
    for (std::size_t i = 0; i < o.failures.size() && i < 10; ++i) std::printf("    %s\n", o.failures[i].c_str());
    std::fflush(stdout);
  };

  report(1, "d∘d = 0 and θ_z = d i_z + i_z d", 10, [&] { return complex_identities(cs); });

  // Building the spectral sequences is shared by 2-5; charge it to 2.
  report(2, "ker s_p = F_{p+1}, image of s_p, s_p∘lift = id", 30, [&] {
    Outcome o;
    for (const auto& [c, hs] : hs_corpus()) {
      o.fail(c.name, hs->check_s_maps());
      o.fail(c.name, hs->check_lift_values(seed, 16));
    }
    return o;
  });

  report(3, "d_0 = (-1)^p d_v, E_1 ≅ H(g/I; C^q), d_1 = d_+, ψ iso, Σ E_∞ = H^n", 120, [&] {
    Outcome o;
    for (const auto& [c, hs] : hs_corpus()) {
      o.fail(c.name, hs->check_e0());
      o.fail(c.name, hs->check_e1());
      o.fail(c.name, hs->check_psi());
      o.fail(c.name, check_page_chain(hs->filtration(), hs->pages()));
      o.fail(c.name, check_convergence(hs->filtration(), hs->pages()));
      if (hs->n_jk() + hs->n_ik() == 0) o.fail(c.name, check_double_complex(*hs));
    }
    return o;
  });

  report(4, "g/I action: bracket compatibility and invariance of restricted classes", 0, [&] {
    Outcome o;
    for (const auto& [c, hs] : hs_corpus()) o.fail(c.name, hs->check_action());
    return o;
  });

  report(5, "ψ(e e') = (-1)^{p2 q1} ψ(e) ψ(e') on trivial coefficients", 0, [&] {
    Outcome o;
    int n = 0;
    for (const auto& [c, hs] : hs_corpus()) {
      if (!c.trivial) continue;
      ++n;
      o.fail(c.name, hs->check_products(2));
      TensorDecomposition td = tensor_decomposition(*hs);
      o.fail(c.name, td.failures);
    }
    o.note = std::to_string(n) + " instances";
    return o;
  });

  report(6, "dim H(g_K, l_Δ) = |W^P| and degeneration at E_2, P = B, all supports, A1-A3", 0, [&] {
    Outcome o;
    std::string times;
    for (const char* type : {"A1", "A2", "A3"}) {
      auto t0 = Clock::now();
      RootDatum rd = build_root_datum(type);
      ParabolicDatum pd = make_parabolic(rd, {});
      for (const auto& t : subsets_of(all_roots(rd.rank))) {
        BKInstance b = build_bk_instance(pd, t);
        HochschildSerre hs = bk_spectral(b);
        const std::size_t expect = weyl_counts(rd, {}, b.K).W_over_P;
        o.expect(hs.main_cohomology().total_dim() == expect, b.name() + ": dim != |W^P| = " + std::to_string(expect));
        o.expect(hs.pages().degeneration_page == 2,
                 b.name() + ": degeneration page " + std::to_string(hs.pages().degeneration_page));
        std::size_t e2 = 0;
        for (int p = 0; p <= static_cast<int>(hs.n_jl()); ++p)
          for (int q = 0; q <= static_cast<int>(hs.n_il()); ++q) e2 += hs.pages().dim(2, p, q);
        o.expect(e2 == expect, b.name() + ": dim E_2 != |W^P|");
        if (oracle()["bk"].contains(b.name()))
          o.expect(hs.main_cohomology().betti == dims(oracle()["bk"][b.name()]["betti"]), b.name() + ": betti != oracle");
      }
      const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      const double limit = std::string(type) == "A3" ? 1800 : 60;
      o.expect(secs <= limit, std::string(type) + " took " + std::to_string(secs) + " s");
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%s %.2f s", times.empty() ? "" : ", ", type, secs);
      times += buf;
    }
    o.note = times;
    return o;
  });

  report(7, "A2 full flag, t = {1}: A, quotient, factorization, ker i* = (A+)", 0, [&] {
    Outcome o;
    BKInstance b = build_bk_instance(make_parabolic(build_root_datum("A2"), {}), {1});
    HochschildSerre hs = bk_spectral(b);
    BKReport r = verify_structure(b, hs);
    for (const auto& c : r.checks) o.expect(c.pass, c.name + ": " + c.detail);
    o.expect(r.sub_dims == std::vector<std::size_t>{1, 0, 1}, "subalgebra dims");
    o.expect(r.quotient_dims == std::vector<std::size_t>{1, 0, 1, 0, 1}, "quotient dims");
    o.expect(poly_product(r.sub_dims, r.quotient_dims) == r.betti &&
                 r.betti == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1},
             "(1+q)(1+q+q^2) factorization");
    o.expect(r.sub_dims == dims(oracle()["bk"][b.name()]["sub"]), "subalgebra != oracle");
    o.expect(r.quotient_dims == dims(oracle()["quotient"][b.name()]), "quotient != oracle");
    TensorDecomposition td = tensor_decomposition(hs);
    o.expect(td.ideal_equal, "ker i* != (A+)");
    for (std::size_t n = 0; n < td.ker_i_star.size(); ++n)
      o.expect(td.ker_i_star[n] == td.ideal_a_plus[n], "ker i* != (A+) in degree " + std::to_string(n));
    return o;
  });

  report(8, "Kostant totals dim H(ũ_K)^{l_K} = |W/W_{P_K}|, all A2/A3 pairs", 0, [&] {
    Outcome o;
    int pairs = 0, advisory = 0;
    for (const char* type : {"A2", "A3"}) {
      RootDatum rd = build_root_datum(type);
      for (const auto& levi : subsets_of(all_roots(rd.rank))) {
        ParabolicDatum pd = make_parabolic(rd, levi);
        for (const auto& extra : subsets_of(minus(all_roots(rd.rank), levi))) {
          std::set<int> K = levi;
          K.insert(extra.begin(), extra.end());
          KostantRow row = kostant_table(pd, K);
          ++pairs;
          advisory += row.per_degree_match;
          o.expect(row.total_ok, key(type, K) + " levi=" + format_set(levi) + ": " + std::to_string(row.total) +
                                     " != " + std::to_string(row.expected));
          if (levi.empty() && oracle()["kostant"].contains(key(type, K)))
            o.expect(row.invariant_dims == dims(oracle()["kostant"][key(type, K)]), key(type, K) + ": != oracle");
        }
      }
    }
    o.note = std::to_string(pairs) + " pairs, per-degree length match (advisory) " + std::to_string(advisory) + "/" +
             std::to_string(pairs);
    return o;
  });

  report(9, "bk-verify machine reports are byte-identical across runs", 0, [&] {
    Outcome o;
    const std::string base = "/tmp/hsc_acceptance_" + std::to_string(::getpid());
    auto run = [&](const std::string& out, const std::string& extra) {
      const std::string cmd = std::string(HSC_TOOL) + " bk-verify --preset A2 --levi \"\" --t-support 1 --quiet" + extra +
                              " --out " + out;
      return std::system(cmd.c_str());
    };
    auto slurp = [](const std::string& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    o.expect(run(base + "_a.json", "") == 0, "first run failed");
    o.expect(run(base + "_b.json", " --jobs 2") == 0, "second run failed");
    const std::string a = slurp(base + "_a.json"), b = slurp(base + "_b.json");
    o.expect(!a.empty() && a == b, "reports differ");
    std::remove((base + "_a.json").c_str());
    std::remove((base + "_b.json").c_str());
    return o;
  });

  std::printf("%s\n", failed ? "acceptance: FAIL" : "acceptance: PASS");
  return failed ? 1 : 0;
}
