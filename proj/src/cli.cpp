#include "hsc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace hsc::cli {

using nlohmann::ordered_json;

namespace {

const char* kModule = "cli";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Rational rational_field(const std::string& s, const std::string& where) {
  try {
    return parse_rational(trim(s));
  } catch (const std::invalid_argument&) {
    throw InputError(kModule, where + ": bad coefficient '" + trim(s) + "'");
  }
}

ordered_json dims_json(const std::vector<std::size_t>& v) { return ordered_json(v); }

ordered_json checks_json(const std::vector<BKCheck>& checks) {
  ordered_json a = ordered_json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

BKCheck verdict(std::string name, const std::vector<std::string>& failures) {
  return {std::move(name), failures.empty(),
          failures.empty() ? "ok" : failures.front() + (failures.size() > 1 ? " (+" + std::to_string(failures.size() - 1) + " more)" : "")};
}

std::string dims_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Poincaré polynomial in q = t^2 when only even degrees occur, else in t.
std::string poincare(const std::vector<std::size_t>& d) {
  bool even = true;
  for (std::size_t i = 1; i < d.size(); i += 2) even = even && d[i] == 0;
  const std::string var = even ? "q" : "t";
  std::string s;
  for (std::size_t i = 0; i < d.size(); i += even ? 2 : 1) {
    if (!d[i]) continue;
    const std::size_t e = even ? i / 2 : i;
    std::string term = e == 0 ? std::to_string(d[i])
                              : (d[i] == 1 ? "" : std::to_string(d[i])) + var + (e > 1 ? "^" + std::to_string(e) : "");
    s += (s.empty() ? "" : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

const std::vector<std::string> kAssumptions = {
    "ground field: exact rationals in place of the complex numbers",
    "L_K-invariants computed as l_K-invariants (connected group)",
    "identification of H*(g_K, l_diag) with the deformed cohomology ring of G/P is taken as given",
};

struct Instance {
  bool preset = false;
  std::optional<BKInstance> bk;
  LieAlgebra g;
  std::vector<SparseVec> k_basis, ideal_basis;
  LieModule m;
  bool trivial = true;
  ordered_json echo;
};

Instance make_instance(const Config& cfg, bool need_ideal) {
  if (cfg.preset.empty() == cfg.custom.empty()) throw InputError(kModule, "give exactly one of --preset and --custom");
  Instance in;
  if (!cfg.preset.empty()) {
    in.preset = true;
    auto pd = make_parabolic(build_root_datum(cfg.preset), parse_index_set(cfg.levi, "levi"));
    in.bk = build_bk_instance(pd, parse_index_set(cfg.t_support, "t-support"));
    in.g = in.bk->gk;
    for (Index i : in.bk->k_indices) in.k_basis.push_back(unit_vec(i));
    for (Index i : in.bk->ideal_indices) in.ideal_basis.push_back(unit_vec(i));
    in.m = trivial_module(in.g);
    in.echo = {{"preset", cfg.preset},
               {"levi", ordered_json(std::vector<int>(pd.levi.begin(), pd.levi.end()))},
               {"t_support", ordered_json(std::vector<int>(in.bk->t_support.begin(), in.bk->t_support.end()))},
               {"name", in.bk->name()}};
    return in;
  }
  in.g = load_algebra(cfg.custom);
  in.k_basis = parse_basis(in.g, cfg.k, "k");
  in.ideal_basis = parse_basis(in.g, cfg.ideal, "ideal");
  if (need_ideal && cfg.ideal.empty()) throw InputError(kModule, "--ideal is required for this command");
  if (cfg.module == "trivial") {
    in.m = trivial_module(in.g);
  } else if (cfg.module == "adjoint") {
    in.m = adjoint_module(in.g);
    in.trivial = false;
  } else {
    throw InputError(kModule, "module: expected 'trivial' or 'adjoint', got '" + cfg.module + "'");
  }
  if (Subspace::span(in.g.dim(), in.k_basis).dim() != in.k_basis.size())
    throw InputError(kModule, "k: basis vectors are dependent");
  if (!is_subalgebra(in.g, Subspace::span(in.g.dim(), in.k_basis))) throw InputError(kModule, "k: not a subalgebra");
  if (!cfg.ideal.empty() && !is_ideal(in.g, Subspace::span(in.g.dim(), in.ideal_basis)))
    throw InputError(kModule, "ideal: not an ideal");
  in.echo = {{"custom", cfg.custom}, {"dim", in.g.dim()}, {"k", cfg.k}, {"ideal", cfg.ideal}, {"module", cfg.module}};
  return in;
}

ordered_json ring_json(const CohomologyRing& h) {
  ordered_json out = {{"betti", h.betti}, {"total", h.total_dim()}};
  if (!h.has_products) return out;
  ordered_json prods = ordered_json::array();
  for (const auto& [key, v] : h.products) {
    if (v.empty()) continue;
    auto [p, i, q, j] = key;
    ordered_json val = ordered_json::array();
    for (const auto& [k, c] : v.entries) val.push_back({k, to_string(c)});
    prods.push_back({{"p", p}, {"a", i}, {"q", q}, {"b", j}, {"value", val}});
  }
  out["products"] = prods;
  return out;
}

ordered_json grid(const Page& pg, int pmax, int qmax, bool ranks) {
  ordered_json rows = ordered_json::array();
  for (int p = 0; p <= pmax; ++p) {
    std::vector<std::size_t> row;
    for (int q = 0; q <= qmax; ++q) row.push_back(ranks ? pg.d_rank(p, q) : pg.dim(p, q));
    rows.push_back(row);
  }
  return rows;
}

ordered_json pages_json(const HochschildSerre& hs) {
  const PageState& ps = hs.pages();
  const int pmax = static_cast<int>(hs.n_jl()), qmax = static_cast<int>(hs.n_il());
  ordered_json pages = ordered_json::array();
  for (const auto& pg : ps.pages)
    pages.push_back({{"r", pg.r}, {"dims", grid(pg, pmax, qmax, false)}, {"d_ranks", grid(pg, pmax, qmax, true)}});
  return {{"pages", pages},
          {"infinity", grid(ps.infinity, pmax, qmax, false)},
          {"first_degenerate_page", ps.first_degenerate_page},
          {"degeneration_page", ps.degeneration_page}};
}

Result finish(const std::string& command, const Instance& in, ordered_json results, const std::vector<BKCheck>& checks,
              std::string text) {
  Result r;
  r.ok = std::all_of(checks.begin(), checks.end(), [](const BKCheck& c) { return c.pass; });
  r.report = {{"schema", kSchema},
              {"command", command},
              {"instance", in.echo},
              {"assumptions", kAssumptions},
              {"results", std::move(results)},
              {"verdicts", checks_json(checks)},
              {"ok", r.ok}};
  for (const auto& c : checks) text += (c.pass ? "  PASS " : "  FAIL ") + c.name + ": " + c.detail + "\n";
  text += r.ok ? "all checks passed\n" : "some checks FAILED\n";
  r.text = std::move(text);
  return r;
}

Result run_cohomology(const Config& cfg) {
  Instance in = make_instance(cfg, false);
  const ModulePairing sc = ModulePairing::scalar();
  RelativeComplex rc = relative_complex(in.g, in.k_basis, in.m);
  std::vector<BKCheck> checks;
  std::vector<std::string> dd;
  for (int n = 0; n + 1 <= rc.top_degree(); ++n)
    if (!(rc.d(n + 1) * rc.d(n)).is_zero()) dd.push_back("d∘d != 0 in degree " + std::to_string(n));
  checks.push_back(verdict("d-squared", dd));
  CohomologyRing h = cohomology(rc, in.trivial ? &sc : nullptr);
  std::string text = "relative cohomology, betti " + dims_text(h.betti) + ", total " + std::to_string(h.total_dim()) +
                     "\n  poincare: " + poincare(h.betti) + "\n";
  return finish("cohomology", in, ring_json(h), checks, text);
}

Result run_spectral(const Config& cfg) {
  Instance in = make_instance(cfg, true);
  TripleData t = build_triple(in.g, in.k_basis, in.ideal_basis);
  std::optional<ModulePairing> pairing;
  if (in.trivial) pairing = ModulePairing::scalar();
  HochschildSerre hs(std::move(t), in.m, pairing, cfg.jobs);
  std::vector<BKCheck> checks = {
      verdict("s-maps", hs.check_s_maps()),
      verdict("lift-values", hs.check_lift_values(cfg.seed, cfg.samples)),
      verdict("e0", hs.check_e0()),
      verdict("e1", hs.check_e1()),
      verdict("psi", hs.check_psi()),
      verdict("action", hs.check_action()),
      verdict("edges", hs.check_edges()),
      verdict("convergence", check_convergence(hs.filtration(), hs.pages())),
      verdict("page-chain", check_page_chain(hs.filtration(), hs.pages())),
  };
  if (hs.has_products()) checks.push_back(verdict("products", hs.check_products(2)));
  if (hs.n_jk() + hs.n_ik() == 0) checks.push_back(verdict("double-complex", check_double_complex(hs)));
  ordered_json res = pages_json(hs);
  res["betti"] = hs.main_cohomology().betti;
  std::string text = "Hochschild-Serre spectral sequence: dim g/k = " + std::to_string(hs.n_jl() + hs.n_il()) +
                     ", dim I/I_k = " + std::to_string(hs.n_il()) + "\n  betti " +
                     dims_text(hs.main_cohomology().betti) + "\n  degeneration page " +
                     std::to_string(hs.pages().degeneration_page) + " (first degenerate page " +
                     std::to_string(hs.pages().first_degenerate_page) + ")\n";
  return finish("spectral", in, res, checks, text);
}

Result run_bk(const Config& cfg) {
  if (cfg.preset.empty()) throw InputError(kModule, "bk-verify needs --preset");
  Instance in = make_instance(cfg, true);
  const BKInstance& b = *in.bk;
  HochschildSerre hs = bk_spectral(b, cfg.jobs);
  BKReport r = verify_structure(b, hs);
  KostantRow kr = kostant_table(b.pd, b.K);
  std::vector<BKCheck> checks = r.checks;
  checks.push_back({"kostant-total", kr.total_ok,
                    std::to_string(kr.total) + " invariants, |W/W_{P_K}| = " + std::to_string(kr.expected)});
  ordered_json res = {{"betti", r.betti},
                      {"total", r.total},
                      {"W_over_P", r.weyl.W_over_P},
                      {"degeneration_page", r.degeneration_page},
                      {"first_degenerate_page", r.first_degenerate_page},
                      {"e2", r.e2_dims},
                      {"e_infinity", r.einf_dims},
                      {"subalgebra", dims_json(r.sub_dims)},
                      {"subalgebra_independent", dims_json(r.sub_independent)},
                      {"quotient", dims_json(r.quotient_dims)},
                      {"invariants", dims_json(r.invariant_dims)},
                      {"ker_i_star", dims_json(r.ker_i_star_dims)},
                      {"poincare", poincare(r.betti)},
                      {"factorization", "(" + poincare(r.sub_dims) + ")(" + poincare(r.quotient_dims) + ")"},
                      {"kostant", {{"K", std::vector<int>(kr.K.begin(), kr.K.end())},
                                   {"invariant_dims", kr.invariant_dims},
                                   {"coset_lengths", kr.by_length},
                                   {"per_degree_match_advisory", kr.per_degree_match}}},
                      {"ring", ring_json(hs.main_cohomology())}};
  std::string text = b.name() + ", K = " + format_set(b.K) + "\n  betti " + dims_text(r.betti) + " = " +
                     poincare(r.betti) + "\n  subalgebra " + dims_text(r.sub_dims) + ", quotient " +
                     dims_text(r.quotient_dims) + "\n  factorization (" + poincare(r.sub_dims) + ")(" +
                     poincare(r.quotient_dims) + ")\n  degeneration page " + std::to_string(r.degeneration_page) +
                     "\n  kostant per-degree match (advisory): " + (kr.per_degree_match ? "yes" : "no") + "\n";
  return finish("bk-verify", in, res, checks, text);
}

Result run_weyl(const Config& cfg) {
  if (cfg.preset.empty()) throw InputError(kModule, "weyl needs --preset");
  RootDatum rd = build_root_datum(cfg.preset);
  std::set<int> levi = parse_index_set(cfg.levi, "levi");
  std::set<int> K = cfg.K.empty() ? levi : parse_index_set(cfg.K, "K");
  make_parabolic(rd, levi);
  WeylCounts w = weyl_counts(rd, levi, K);
  Instance in;
  in.echo = {{"preset", cfg.preset},
             {"levi", std::vector<int>(levi.begin(), levi.end())},
             {"K", std::vector<int>(K.begin(), K.end())}};
  ordered_json res = {{"W", w.W},
                      {"W_P", w.W_P},
                      {"W_PK", w.W_PK},
                      {"W_over_P", w.W_over_P},
                      {"WPK_over_WP", w.WPK_over_WP},
                      {"W_over_PK", w.W_over_PK},
                      {"lengths_P", w.by_length_P},
                      {"lengths_PK", w.by_length_PK},
                      {"cartan", rd.cartan},
                      {"positive_roots", rd.positive}};
  std::size_t sum_p = 0;
  for (auto c : w.by_length_P) sum_p += c;
  std::vector<BKCheck> checks = {
      {"coset-product", w.WPK_over_WP * w.W_over_PK == w.W_over_P, "|W_{P_K}/W_P| |W/W_{P_K}| = |W^P|"},
      {"length-total", sum_p == w.W_over_P, "length counts sum to |W^P|"},
  };
  std::string text = rd.type + ": |W| = " + std::to_string(w.W) + ", |W_P| = " + std::to_string(w.W_P) +
                     ", |W^P| = " + std::to_string(w.W_over_P) + ", |W/W_{P_K}| = " + std::to_string(w.W_over_PK) +
                     "\n  lengths " + dims_text(w.by_length_P) + "\n";
  return finish("weyl", in, res, checks, text);
}

}  // namespace

LieAlgebra parse_algebra(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  std::optional<LieAlgebra> g;
  std::map<std::pair<Index, Index>, int> seen;  // pair → line
  std::map<std::pair<Index, Index>, SparseVec> table;
  std::vector<std::string> labels;
  static const std::regex bracket_re(R"(^\s*(\d+)\s+(\d+)\s*->\s*(.*)$)");
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "dim") {
      long n = -1;
      std::string rest;
      if (g || !(ls >> n) || n <= 0 || n > 64 || (ls >> rest)) throw InputError(kModule, where + ": bad dim line");
      g.emplace(static_cast<std::size_t>(n));
      continue;
    }
    if (!g) throw InputError(kModule, where + ": expected 'dim n' first");
    if (head == "labels") {
      std::string l;
      while (ls >> l) labels.push_back(l);
      if (labels.size() != g->dim()) throw InputError(kModule, where + ": label count does not match dim");
      std::vector<std::string> sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError(kModule, where + ": duplicate label");
      continue;
    }
    std::smatch mt;
    if (!std::regex_match(line, mt, bracket_re)) throw InputError(kModule, where + ": expected 'i j -> k:c, ...'");
    const long i = std::stol(mt[1]), j = std::stol(mt[2]);
    const long n = static_cast<long>(g->dim());
    if (i < 1 || j < 1 || i > n || j > n) throw InputError(kModule, where + ": index out of range");
    if (i == j) throw InputError(kModule, where + ": [x, x] must be zero");
    std::map<Index, Rational> acc;
    std::string rhs = trim(mt[3]);
    if (!rhs.empty()) {
      std::stringstream rs(rhs);
      std::string term;
      while (std::getline(rs, term, ',')) {
        auto colon = term.find(':');
        if (colon == std::string::npos) throw InputError(kModule, where + ": expected k:c in '" + trim(term) + "'");
        long k = -1;
        try {
          k = std::stol(trim(term.substr(0, colon)));
        } catch (const std::exception&) {
          throw InputError(kModule, where + ": bad index in '" + trim(term) + "'");
        }
        if (k < 1 || k > n) throw InputError(kModule, where + ": index out of range");
        acc[static_cast<Index>(k - 1)] += rational_field(term.substr(colon + 1), where);
      }
    }
    SparseVec v;
    for (auto& [k, c] : acc) v.push(k, c);
    Index a = static_cast<Index>(i - 1), b = static_cast<Index>(j - 1);
    if (a > b) {
      std::swap(a, b);
      v = negate(v);
    }
    if (auto it = seen.find({a, b}); it != seen.end()) {
      if (table[{a, b}] != v)
        throw InputError(kModule, where + ": conflicts with line " + std::to_string(it->second));
    }
    seen[{a, b}] = lineno;
    table[{a, b}] = v;
  }
  if (!g) throw InputError(kModule, source + ": missing 'dim n'");
  for (const auto& [ab, v] : table) g->set_bracket(ab.first, ab.second, v);
  if (!labels.empty()) g->set_labels(labels);
  ValidationReport rep = validate_algebra(*g);
  if (!rep.ok()) throw InputError(kModule, source + ": not a Lie algebra: " + rep.violations.front());
  return *g;
}

LieAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open algebra file '" + path + "'");
  return parse_algebra(in, path);
}

std::set<int> parse_index_set(const std::string& s, const std::string& field) {
  std::set<int> out;
  std::string t = s;
  for (char& c : t)
    if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 3)
      throw InputError(kModule, field + ": bad index '" + tok + "'");
    if (!out.insert(std::stoi(tok)).second) throw InputError(kModule, field + ": repeated index " + tok);
  }
  return out;
}

std::vector<SparseVec> parse_basis(const LieAlgebra& g, const std::string& text, const std::string& field) {
  std::vector<SparseVec> out;
  std::stringstream ss(text);
  std::string item;
  static const std::regex term_re(R"(^([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z_0-9()']+)\s*)");
  while (std::getline(ss, item, ',')) {
    std::string rest = trim(item);
    if (rest.empty()) continue;
    std::map<Index, Rational> acc;
    bool first = true;
    while (!rest.empty()) {
      std::smatch mt;
      if (!std::regex_search(rest, mt, term_re) || (!first && mt[1].str().empty()))
        throw InputError(kModule, field + ": cannot parse '" + trim(item) + "'");
      first = false;
      Rational c = mt[2].matched ? rational_field(mt[2], field) : Rational(1);
      if (mt[1] == "-") c = -c;
      const std::string name = mt[3];
      long idx = -1;
      for (std::size_t i = 0; i < g.dim(); ++i)
        if (g.label(i) == name) idx = static_cast<long>(i);
      if (idx < 0 && std::all_of(name.begin(), name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        idx = std::stol(name) - 1;
        if (idx < 0 || idx >= static_cast<long>(g.dim())) throw InputError(kModule, field + ": index out of range");
      }
      if (idx < 0) throw InputError(kModule, field + ": unknown basis element '" + name + "'");
      acc[static_cast<Index>(idx)] += c;
      rest = trim(mt.suffix());
    }
    SparseVec v;
    for (auto& [k, c] : acc) v.push(k, c);
    if (v.empty()) throw InputError(kModule, field + ": zero vector in '" + trim(item) + "'");
    out.push_back(v);
  }
  return out;
}

Result run(const Config& cfg) {
  if (cfg.jobs < 1) throw InputError(kModule, "jobs must be positive");
  if (cfg.command == "cohomology") return run_cohomology(cfg);
  if (cfg.command == "spectral") return run_spectral(cfg);
  if (cfg.command == "bk-verify") return run_bk(cfg);
  if (cfg.command == "weyl") return run_weyl(cfg);
  throw InputError(kModule, "unknown command '" + cfg.command + "'");
}

}  // namespace hsc::cli
