#include "hsc/spectral.hpp"

#include "hsc/parallel.hpp"

#include <algorithm>

namespace hsc {

namespace {

const char* kModule = "hs_spectral";

std::string cell_name(int r, int p, int q) {
  return "E_" + std::to_string(r) + "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

SparseVec lift_class(const Subquotient& e, const SparseVec& coords) {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [i, x] : coords.entries) terms.emplace_back(x, &e.representatives()[i]);
  if (terms.empty()) return {};
  return combine(terms, e.ambient());
}

}  // namespace

FilteredComplex::FilteredComplex(const RelativeComplex& c, std::size_t split) : c_(&c) {
  const Mask low = split >= 64 ? ~Mask(0) : ((Mask(1) << split) - 1);
  for (int n = 0; n <= c.top_degree(); ++n) {
    std::vector<int> lv;
    for (const auto& b : c.relative(n).basis()) {
      int level = -1;
      for (const auto& [coord, x] : b.entries) {
        int l = popcount(c.space().tuple_at(n, coord) & low);
        if (level < 0) level = l;
        if (l != level) throw Error(kModule, "relative basis is not homogeneous for the filtration");
      }
      lv.push_back(level);
    }
    levels_.push_back(std::move(lv));
  }
}

Subspace FilteredComplex::F(int p, int n) const {
  p = std::max(p, 0);
  std::vector<Index> idx;
  if (p <= n)
    for (std::size_t i = 0; i < levels_.at(n).size(); ++i)
      if (levels_[n][i] >= p) idx.push_back(static_cast<Index>(i));
  return Subspace::coordinate(dim(n), idx);
}

Subspace FilteredComplex::F(int p, int n, int r) const {
  const int pc = std::max(p, 0);
  if (n >= top()) return F(pc, n);
  const int t = std::min(std::max(p + r, 0), n + 2);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({pc, n, t});
    if (it != cache_.end()) return it->second;
  }
  Subspace s = F_cond(pc, n, t);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::make_tuple(pc, n, t), s);
  return s;
}

Subspace FilteredComplex::F_cond(int p, int n, int t) const {
  if (p > n) return Subspace(dim(n));
  std::vector<Index> cols;
  for (std::size_t i = 0; i < levels_[n].size(); ++i)
    if (levels_[n][i] >= p) cols.push_back(static_cast<Index>(i));
  std::vector<long> row_map(dim(n + 1), -1);
  long nrows = 0;
  for (std::size_t i = 0; i < levels_[n + 1].size(); ++i)
    if (levels_[n + 1][i] < t) row_map[i] = nrows++;
  if (nrows == 0) return Subspace::coordinate(dim(n), cols);
  const RationalMatrix& d = c_->d(n);
  std::vector<SparseVec> sub(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, x] : d.col(cols[j]).entries)
      if (row_map[r] >= 0) sub[j].entries.emplace_back(static_cast<Index>(row_map[r]), x);
  Subspace ker = kernel_basis(RationalMatrix::from_columns(nrows, sub));
  std::vector<SparseVec> vs;
  for (const auto& k : ker.basis()) {
    SparseVec v;
    for (const auto& [j, x] : k.entries) v.entries.emplace_back(cols[j], x);
    vs.push_back(std::move(v));
  }
  return Subspace::span(dim(n), vs);
}

int FilteredComplex::filtration_level(int n, const SparseVec& c) const {
  if (c.empty()) return n + 1;
  int lv = n + 1;
  for (const auto& [i, x] : c.entries) lv = std::min(lv, levels_.at(n).at(i));
  return lv;
}

// ---------------------------------------------------------------- pages

std::size_t Page::dim(int p, int q) const {
  auto it = cells.find({p, q});
  return it == cells.end() ? 0 : it->second.E.dim();
}

std::size_t Page::d_rank(int p, int q) const {
  auto it = d.find({p, q});
  return it == d.end() ? 0 : rank(it->second);
}

const Page& PageState::page(int r) const {
  if (r < 0) throw Error(kModule, "negative page index");
  if (static_cast<std::size_t>(r) < pages.size()) return pages[r];
  if (first_degenerate_page >= 0) return pages.back();
  throw Error(kModule, "page " + std::to_string(r) + " was not computed");
}

PageState compute_pages(const FilteredComplex& fc, int max_r, int jobs) {
  const RelativeComplex& c = fc.complex();
  const int top = fc.top();
  PageState ps;
  ps.top = top;
  std::vector<std::pair<int, int>> keys;
  for (int n = 0; n <= top; ++n)
    for (int p = 0; p <= n; ++p) keys.emplace_back(p, n - p);
  std::vector<RationalMatrix> ident;
  for (int n = 0; n <= top; ++n) ident.push_back(RationalMatrix::identity(fc.dim(n)));

  // E_∞
  {
    std::vector<PageCell> cells(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
      auto [p, q] = keys[i];
      const int n = p + q;
      PageCell& cell = cells[i];
      Subspace fp1 = fc.F(p + 1, n);
      cell.Z = sum(fc.F(p, n, top + 2), fp1);
      Subspace bn = n > 0 ? image(c.d(n - 1)) : Subspace(fc.dim(n));
      cell.B = sum(intersection(bn, fc.F(p, n)), fp1);
      cell.E = Subquotient(cell.Z, cell.B);
    });
    ps.infinity.r = -1;
    for (std::size_t i = 0; i < keys.size(); ++i) ps.infinity.cells[keys[i]] = std::move(cells[i]);
  }

  for (int r = 0;; ++r) {
    Page page;
    page.r = r;
    std::vector<PageCell> cells(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
      auto [p, q] = keys[i];
      const int n = p + q;
      PageCell& cell = cells[i];
      Subspace fp1 = fc.F(p + 1, n);
      Subspace fpr = fc.F(p, n, r);
      Subspace dpart = n > 0 ? image_of(c.d(n - 1), fc.F(p - r + 1, n - 1, r - 1)) : Subspace(fc.dim(n));
      cell.Z = sum(fpr, fp1);
      cell.B = sum(dpart, fp1);
      cell.G = sum(fc.F(p + 1, n, r - 1), dpart);
      cell.E = Subquotient(cell.Z, cell.B);
      cell.EG = Subquotient(fpr, cell.G);
      cell.iso = induced_map(ident[n], cell.EG, cell.E);
      if (cell.iso.rows() != cell.iso.cols() || rank(cell.iso) != cell.iso.rows())
        throw Error(kModule, "page presentations disagree at " + cell_name(r, p, q));
    });
    for (std::size_t i = 0; i < keys.size(); ++i) page.cells[keys[i]] = std::move(cells[i]);

    std::vector<RationalMatrix> ds(keys.size()), dc(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
      auto [p, q] = keys[i];
      const int n = p + q;
      const PageCell& src = page.cells.at(keys[i]);
      auto tgt = page.cells.find({p + r, q - r + 1});
      if (q - r + 1 < 0 || n + 1 > top || tgt == page.cells.end()) {
        ds[i] = RationalMatrix(0, src.E.dim());
        return;
      }
      const PageCell& dst = tgt->second;
      RationalMatrix dg = induced_map(c.d(n), src.EG, dst.EG);
      auto inv = inverse(src.iso);
      if (!inv) throw Error(kModule, "page presentation comparison is not invertible");
      ds[i] = dst.iso * dg * *inv;
      if (r <= 1) dc[i] = induced_map(c.d(n), src.E, dst.E);
    });
    for (std::size_t i = 0; i < keys.size(); ++i) {
      page.d[keys[i]] = std::move(ds[i]);
      if (r <= 1 && dc[i].rows() + dc[i].cols() > 0) page.d_coset[keys[i]] = std::move(dc[i]);
    }

    bool degenerate = true;
    for (const auto& k : keys) {
      const auto& a = page.cells.at(k);
      const auto& b = ps.infinity.cells.at(k);
      if (a.Z != b.Z || a.B != b.B) {
        degenerate = false;
        break;
      }
    }
    ps.pages.push_back(std::move(page));
    if (degenerate && ps.first_degenerate_page < 0) ps.first_degenerate_page = r;
    if (degenerate && r >= 2) {
      ps.degeneration_page = r;
      break;
    }
    if (max_r >= 0 && r >= max_r) break;
    if (r > top + 2) throw Error(kModule, "spectral sequence failed to stabilize");
  }
  return ps;
}

// ---------------------------------------------------------------- checks

std::vector<std::string> check_page_chain(const FilteredComplex& fc, const PageState& ps) {
  std::vector<std::string> bad;
  for (std::size_t r = 0; r < ps.pages.size(); ++r) {
    const Page& pg = ps.pages[r];
    for (const auto& [key, cell] : pg.cells) {
      auto [p, q] = key;
      const std::string nm = cell_name(static_cast<int>(r), p, q);
      const auto& inf = ps.infinity.cells.at(key);
      if (!cell.Z.contains(cell.B)) bad.push_back(nm + ": B not in Z");
      if (!cell.Z.contains(inf.Z) || !inf.B.contains(cell.B) || !inf.Z.contains(inf.B))
        bad.push_back(nm + ": not nested around E_inf");
      if (r + 1 < ps.pages.size()) {
        const auto& nx = ps.pages[r + 1].cells.at(key);
        if (!nx.B.contains(cell.B) || !nx.Z.contains(nx.B) || !cell.Z.contains(nx.Z))
          bad.push_back(nm + ": chain B_r ⊆ B_{r+1} ⊆ Z_{r+1} ⊆ Z_r fails");
      }
      if (r <= 1 && cell.G != cell.B) bad.push_back(nm + ": G_r != B_r");
      auto d1 = pg.d.find(key);
      if (r <= 1) {
        auto dc = pg.d_coset.find(key);
        if (dc != pg.d_coset.end() && dc->second != d1->second) bad.push_back(nm + ": coset and G presentations differ");
      }
      auto d2 = pg.d.find({p + static_cast<int>(r), q - static_cast<int>(r) + 1});
      if (d2 != pg.d.end() && d1->second.rows() > 0 && d2->second.rows() > 0 && !(d2->second * d1->second).is_zero())
        bad.push_back(nm + ": d_r∘d_r != 0");
    }
  }
  (void)fc;
  return bad;
}

std::vector<std::string> check_next_page(const FilteredComplex& fc, const PageState& ps, int r) {
  std::vector<std::string> bad;
  if (r + 1 >= static_cast<int>(ps.pages.size())) return bad;
  const Page& pg = ps.pages[r];
  const Page& nx = ps.pages[r + 1];
  for (const auto& [key, cell] : pg.cells) {
    auto [p, q] = key;
    const int n = p + q;
    std::vector<SparseVec> zs = cell.B.basis();
    Subspace ker = kernel_basis(pg.d.at(key));
    for (const auto& k : ker.basis()) zs.push_back(lift_class(cell.E, k));
    if (Subspace::span(fc.dim(n), zs) != nx.cells.at(key).Z) bad.push_back(cell_name(r, p, q) + ": ker d_r lift != Z_{r+1}");

    std::vector<SparseVec> bs = cell.B.basis();
    auto in = pg.d.find({p - r, q + r - 1});
    if (in != pg.d.end())
      for (std::size_t j = 0; j < in->second.cols(); ++j) bs.push_back(lift_class(cell.E, in->second.col(j)));
    if (Subspace::span(fc.dim(n), bs) != nx.cells.at(key).B) bad.push_back(cell_name(r, p, q) + ": im d_r lift != B_{r+1}");
  }
  return bad;
}

std::vector<std::string> check_convergence(const FilteredComplex& fc, const PageState& ps) {
  std::vector<std::string> bad;
  const RelativeComplex& c = fc.complex();
  for (int n = 0; n <= fc.top(); ++n) {
    Subspace zn = n < fc.top() ? kernel_basis(c.d(n)) : Subspace::full(fc.dim(n));
    Subspace bn = n > 0 ? image(c.d(n - 1)) : Subspace(fc.dim(n));
    std::size_t h = zn.dim() - bn.dim(), total = 0;
    for (int p = 0; p <= n; ++p) {
      std::size_t e = ps.infinity.dim(p, n - p);
      total += e;
      std::size_t hp = sum(intersection(zn, fc.F(p, n)), bn).dim();
      std::size_t hp1 = sum(intersection(zn, fc.F(p + 1, n)), bn).dim();
      if (hp - hp1 != e) bad.push_back("gr^" + std::to_string(p) + " H^" + std::to_string(n) + " != E_inf");
    }
    if (total != h) bad.push_back("sum of E_inf in degree " + std::to_string(n) + " != dim H^n");
  }
  return bad;
}

}  // namespace hsc
