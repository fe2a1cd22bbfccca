#include "hsc/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace hsc {

namespace {

std::atomic<std::size_t> g_dense_threshold{64};

const char* kModule = "exact_linalg";

}  // namespace

std::size_t dense_threshold() { return g_dense_threshold.load(); }
void set_dense_threshold(std::size_t cols) { g_dense_threshold.store(cols); }

Rational SparseVec::at(Index i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != entries.end() && it->first == i) return it->second;
  return Rational(0);
}

SparseVec unit_vec(Index i) {
  SparseVec v;
  v.entries.emplace_back(i, Rational(1));
  return v;
}

SparseVec scaled(const SparseVec& v, const Rational& c) {
  SparseVec out;
  if (sgn(c) == 0) return out;
  out.entries.reserve(v.entries.size());
  for (const auto& [i, x] : v.entries) out.entries.emplace_back(i, x * c);
  return out;
}

SparseVec negate(const SparseVec& v) {
  SparseVec out = v;
  for (auto& e : out.entries) e.second = -e.second;
  return out;
}

SparseVec axpy(const SparseVec& x, const Rational& c, const SparseVec& y) {
  if (sgn(c) == 0) return x;
  SparseVec out;
  out.entries.reserve(x.entries.size() + y.entries.size());
  auto a = x.entries.begin(), ae = x.entries.end();
  auto b = y.entries.begin(), be = y.entries.end();
  Rational t;
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.entries.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.entries.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      t = a->second + c * b->second;
      if (sgn(t) != 0) out.entries.emplace_back(a->first, t);
      ++a;
      ++b;
    }
  }
  return out;
}

SparseVec add(const SparseVec& a, const SparseVec& b) { return axpy(a, Rational(1), b); }

Rational dot(const SparseVec& a, const SparseVec& b) {
  Rational s = 0;
  auto x = a.entries.begin();
  auto y = b.entries.begin();
  while (x != a.entries.end() && y != b.entries.end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      s += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return s;
}

SparseVec from_dense(const std::vector<Rational>& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i) v.push(static_cast<Index>(i), d[i]);
  return v;
}

std::vector<Rational> to_dense(const SparseVec& v, std::size_t n) {
  std::vector<Rational> d(n);
  for (const auto& [i, x] : v.entries) d[i] = x;
  return d;
}

SparseVec combine(const std::vector<std::pair<Rational, const SparseVec*>>& terms, std::size_t dim_hint) {
  SparseVec out;
  if (terms.size() == 1) return scaled(*terms[0].second, terms[0].first);
  if (terms.size() == 2 && sgn(terms[0].first) != 0) {
    return axpy(scaled(*terms[0].second, terms[0].first), terms[1].first, *terms[1].second);
  }
  if (dim_hint > 0 && dim_hint <= dense_threshold()) {
    std::vector<Rational> acc(dim_hint);
    std::vector<char> touched(dim_hint, 0);
    for (const auto& [c, v] : terms) {
      if (sgn(c) == 0) continue;
      for (const auto& [i, x] : v->entries) {
        acc[i] += c * x;
        touched[i] = 1;
      }
    }
    for (std::size_t i = 0; i < dim_hint; ++i)
      if (touched[i]) out.push(static_cast<Index>(i), acc[i]);
    return out;
  }
  std::vector<std::pair<Index, Rational>> all;
  std::size_t total = 0;
  for (const auto& t : terms) total += t.second->entries.size();
  all.reserve(total);
  for (const auto& [c, v] : terms) {
    if (sgn(c) == 0) continue;
    for (const auto& [i, x] : v->entries) all.emplace_back(i, c * x);
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t k = 0;
  while (k < all.size()) {
    Index i = all[k].first;
    Rational s = std::move(all[k].second);
    ++k;
    while (k < all.size() && all[k].first == i) s += all[k++].second;
    out.push(i, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- matrices

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_data_(rows), col_data_(cols) {}

RationalMatrix RationalMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
  RationalMatrix m(rows, cols);
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t k = 0;
  while (k < t.size()) {
    Index r = t[k].row, c = t[k].col;
    if (r >= rows || c >= cols) throw Error(kModule, "triplet index out of range");
    Rational s = std::move(t[k].value);
    ++k;
    while (k < t.size() && t[k].row == r && t[k].col == c) s += t[k++].value;
    if (sgn(s) != 0) {
      m.row_data_[r].entries.emplace_back(c, s);
      m.col_data_[c].entries.emplace_back(r, std::move(s));
    }
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, const std::vector<SparseVec>& cols) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [r, x] : cols[c].entries) {
      if (r >= rows) throw Error(kModule, "column entry out of range");
      if (sgn(x) == 0) continue;
      m.col_data_[c].entries.emplace_back(r, x);
      m.row_data_[r].entries.emplace_back(static_cast<Index>(c), x);
    }
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, const std::vector<SparseVec>& rows) {
  return from_columns(cols, rows).transpose();
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw Error(kModule, "ragged dense matrix");
    for (std::size_t c = 0; c < nc; ++c)
      if (sgn(rows[r][c]) != 0) t.push_back({static_cast<Index>(r), static_cast<Index>(c), rows[r][c]});
  }
  return from_triplets(rows.size(), nc, std::move(t));
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.row_data_[i] = unit_vec(static_cast<Index>(i));
    m.col_data_[i] = unit_vec(static_cast<Index>(i));
  }
  return m;
}

std::size_t RationalMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : row_data_) n += r.nnz();
  return n;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const { return row_data_[r].at(static_cast<Index>(c)); }

SparseVec RationalMatrix::apply(const SparseVec& x) const {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  terms.reserve(x.entries.size());
  for (const auto& [c, v] : x.entries) {
    if (c >= cols_) throw Error(kModule, "apply: vector longer than matrix width");
    if (!col_data_[c].empty()) terms.emplace_back(v, &col_data_[c]);
  }
  if (terms.empty()) return {};
  return combine(terms, rows_);
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix m;
  m.rows_ = cols_;
  m.cols_ = rows_;
  m.row_data_ = col_data_;
  m.col_data_ = row_data_;
  return m;
}

std::vector<Triplet> RationalMatrix::triplets() const {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : row_data_[r].entries) t.push_back({static_cast<Index>(r), c, x});
  return t;
}

std::vector<std::vector<Rational>> RationalMatrix::dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : row_data_[r].entries) d[r][c] = x;
  return d;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(kModule, "product shape mismatch");
  std::vector<SparseVec> cols(b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) cols[c] = a.apply(b.col(c));
  return RationalMatrix::from_columns(a.rows(), cols);
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(kModule, "sum shape mismatch");
  std::vector<SparseVec> cols(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) cols[c] = add(a.col(c), b.col(c));
  return RationalMatrix::from_columns(a.rows(), cols);
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) { return a + scaled(b, Rational(-1)); }

RationalMatrix scaled(const RationalMatrix& a, const Rational& c) {
  std::vector<SparseVec> cols(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) cols[k] = scaled(a.col(k), c);
  return RationalMatrix::from_columns(a.rows(), cols);
}

RationalMatrix vstack(const std::vector<const RationalMatrix*>& blocks) {
  if (blocks.empty()) return {};
  std::size_t nc = blocks[0]->cols(), nr = 0;
  std::vector<Triplet> t;
  for (const auto* b : blocks) {
    if (b->cols() != nc) throw Error(kModule, "vstack width mismatch");
    for (auto& x : b->triplets()) t.push_back({static_cast<Index>(x.row + nr), x.col, std::move(x.value)});
    nr += b->rows();
  }
  return RationalMatrix::from_triplets(nr, nc, std::move(t));
}

RationalMatrix block_diagonal(std::size_t n, const RationalMatrix& a) {
  std::vector<Triplet> t;
  auto base = a.triplets();
  t.reserve(base.size() * n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& x : base)
      t.push_back({static_cast<Index>(x.row + k * a.rows()), static_cast<Index>(x.col + k * a.cols()), x.value});
  return RationalMatrix::from_triplets(n * a.rows(), n * a.cols(), std::move(t));
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << to_string(m.at(r, c));
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- echelon

long Echelon::pivot_slot(Index c) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  if (it != pivots_.end() && *it == c) return it - pivots_.begin();
  return -1;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  if (rows_.empty() || v.empty()) return v;
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  terms.emplace_back(Rational(1), &v);
  for (const auto& [i, x] : v.entries) {
    long s = pivot_slot(i);
    if (s >= 0) terms.emplace_back(-x, &rows_[s]);
  }
  if (terms.size() == 1) return v;
  return combine(terms, dim_);
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Rational lead = r.entries.front().second;
  if (lead != 1) {
    Rational inv = 1 / lead;
    for (auto& e : r.entries) e.second *= inv;
  }
  Index p = r.leading();
  for (auto& row : rows_) {
    Rational c = row.at(p);
    if (sgn(c) != 0) row = axpy(row, -c, r);
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto pos = it - pivots_.begin();
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

// ---------------------------------------------------------------- subspaces

Subspace Subspace::span(std::size_t ambient, const std::vector<SparseVec>& vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) {
    if (!v.empty() && v.entries.back().first >= ambient) throw Error(kModule, "vector exceeds ambient dimension");
    s.ech_.insert(v);
  }
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Index> all(ambient);
  for (std::size_t i = 0; i < ambient; ++i) all[i] = static_cast<Index>(i);
  return coordinate(ambient, all);
}

Subspace Subspace::coordinate(std::size_t ambient, const std::vector<Index>& indices) {
  std::vector<SparseVec> vs;
  vs.reserve(indices.size());
  for (Index i : indices) vs.push_back(unit_vec(i));
  return span(ambient, vs);
}

bool Subspace::contains(const SparseVec& v) const { return ech_.reduce(v).empty(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(kModule, "ambient mismatch");
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

SparseVec Subspace::coords(const SparseVec& v) const {
  if (!contains(v)) throw Error(kModule, "vector not in subspace");
  SparseVec c;
  for (const auto& [i, x] : v.entries) {
    long s = ech_.pivot_slot(i);
    if (s >= 0) c.entries.emplace_back(static_cast<Index>(s), x);
  }
  return c;
}

SparseVec Subspace::from_coords(const SparseVec& c) const {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [s, x] : c.entries) terms.emplace_back(x, &basis()[s]);
  if (terms.empty()) return {};
  return combine(terms, ambient());
}

RationalMatrix Subspace::basis_matrix() const { return RationalMatrix::from_columns(ambient(), basis()); }

RationalMatrix Subspace::coord_matrix() const {
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < pivots().size(); ++s) t.push_back({static_cast<Index>(s), pivots()[s], Rational(1)});
  return RationalMatrix::from_triplets(dim(), ambient(), std::move(t));
}

Subspace kernel_basis(const RationalMatrix& a) {
  Echelon e(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  const auto& piv = e.pivots();
  std::vector<char> is_pivot(a.cols(), 0);
  for (Index p : piv) is_pivot[p] = 1;
  std::vector<Index> slot_of(a.cols(), 0);
  std::vector<SparseVec> kv(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) kv[c].entries.emplace_back(static_cast<Index>(c), Rational(1));
  for (std::size_t s = 0; s < e.rows().size(); ++s) {
    for (const auto& [c, x] : e.rows()[s].entries)
      if (!is_pivot[c]) kv[c].entries.emplace_back(piv[s], -x);
  }
  std::vector<SparseVec> vs;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    auto& v = kv[c];
    std::sort(v.entries.begin(), v.entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    vs.push_back(std::move(v));
  }
  return Subspace::span(a.cols(), vs);
}

Subspace image(const RationalMatrix& a) {
  std::vector<SparseVec> cols;
  cols.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) cols.push_back(a.col(c));
  return Subspace::span(a.rows(), cols);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw Error(kModule, "ambient mismatch");
  if (b.dim() == 0) return a;
  if (a.dim() == 0) return b;
  std::vector<SparseVec> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vs);
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw Error(kModule, "ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  std::vector<SparseVec> red;
  red.reserve(b.dim());
  for (const auto& v : b.basis()) red.push_back(a.reduce(v));
  Subspace ker = kernel_basis(RationalMatrix::from_columns(a.ambient(), red));
  std::vector<SparseVec> vs;
  for (const auto& y : ker.basis()) vs.push_back(b.from_coords(y));
  return Subspace::span(a.ambient(), vs);
}

Subspace preimage(const RationalMatrix& a, const Subspace& s) {
  if (a.rows() != s.ambient()) throw Error(kModule, "preimage shape mismatch");
  std::vector<SparseVec> red(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) red[c] = s.reduce(a.col(c));
  return kernel_basis(RationalMatrix::from_columns(a.rows(), red));
}

Subspace image_of(const RationalMatrix& a, const Subspace& s) {
  if (a.cols() != s.ambient()) throw Error(kModule, "image shape mismatch");
  std::vector<SparseVec> vs;
  vs.reserve(s.dim());
  for (const auto& b : s.basis()) vs.push_back(a.apply(b));
  return Subspace::span(a.rows(), vs);
}

std::size_t rank(const RationalMatrix& a) {
  Echelon e(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  return e.rank();
}

std::optional<SparseVec> solve(const RationalMatrix& a, const SparseVec& b) {
  const Index last = static_cast<Index>(a.cols());
  Echelon e(a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVec row = a.row(r);
    Rational br = b.at(static_cast<Index>(r));
    if (sgn(br) != 0) row.entries.emplace_back(last, br);
    e.insert(row);
  }
  if (!b.empty() && b.entries.back().first >= a.rows()) throw Error(kModule, "right-hand side too long");
  if (e.pivot_slot(last) >= 0) return std::nullopt;
  SparseVec x;
  for (std::size_t s = 0; s < e.rows().size(); ++s) x.push(e.pivots()[s], e.rows()[s].at(last));
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  if (n == 0) return RationalMatrix(0, 0);
  Echelon e(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    SparseVec row = a.row(r);
    row.entries.emplace_back(static_cast<Index>(n + r), Rational(1));
    e.insert(row);
  }
  if (e.rank() != n || e.pivots().back() >= n) return std::nullopt;
  std::vector<SparseVec> rows(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& [c, x] : e.rows()[s].entries)
      if (c >= n) rows[s].entries.emplace_back(static_cast<Index>(c - n), x);
  return RationalMatrix::from_rows(n, rows);
}

// ---------------------------------------------------------------- coordinates

CoordinateSystem::CoordinateSystem(std::size_t ambient, std::vector<SparseVec> vectors)
    : ambient_(ambient), vectors_(std::move(vectors)), aug_(ambient + vectors_.size()) {
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    SparseVec row = vectors_[i];
    row.entries.emplace_back(static_cast<Index>(ambient_ + i), Rational(1));
    aug_.insert(row);
  }
  if (!aug_.pivots().empty() && aug_.pivots().back() >= ambient_)
    throw Error(kModule, "coordinate vectors are linearly dependent");
}

std::optional<SparseVec> CoordinateSystem::try_coords(const SparseVec& v) const {
  SparseVec r = aug_.reduce(v);
  SparseVec c;
  for (const auto& [i, x] : r.entries) {
    if (i < ambient_) return std::nullopt;
    c.entries.emplace_back(static_cast<Index>(i - ambient_), -x);
  }
  return c;
}

SparseVec CoordinateSystem::coords(const SparseVec& v) const {
  auto c = try_coords(v);
  if (!c) throw Error(kModule, "vector not in span of coordinate system");
  return *c;
}

SparseVec CoordinateSystem::vector_of(const SparseVec& c) const {
  std::vector<std::pair<Rational, const SparseVec*>> terms;
  for (const auto& [i, x] : c.entries) terms.emplace_back(x, &vectors_[i]);
  if (terms.empty()) return {};
  return combine(terms, ambient_);
}

// ---------------------------------------------------------------- subquotients

Subquotient::Subquotient(Subspace top, Subspace bottom)
    : top_(std::move(top)), bottom_(std::move(bottom)), bottom_in_top_(top_.dim()) {
  if (top_.ambient() != bottom_.ambient()) throw Error(kModule, "ambient mismatch");
  for (const auto& b : bottom_.basis()) {
    if (!top_.contains(b)) throw Error(kModule, "subquotient bottom not contained in top");
    bottom_in_top_.insert(top_.coords(b));
  }
  for (std::size_t i = 0; i < top_.dim(); ++i) {
    if (bottom_in_top_.pivot_slot(static_cast<Index>(i)) < 0) {
      free_.push_back(static_cast<Index>(i));
      reps_.push_back(top_.basis()[i]);
    }
  }
}

std::optional<SparseVec> Subquotient::try_class_coords(const SparseVec& v) const {
  if (!top_.contains(v)) return std::nullopt;
  SparseVec r = bottom_in_top_.reduce(top_.coords(v));
  SparseVec c;
  for (const auto& [i, x] : r.entries) {
    auto it = std::lower_bound(free_.begin(), free_.end(), i);
    c.entries.emplace_back(static_cast<Index>(it - free_.begin()), x);
  }
  return c;
}

SparseVec Subquotient::class_coords(const SparseVec& v) const {
  auto c = try_class_coords(v);
  if (!c) throw Error(kModule, "vector not in subquotient top");
  return *c;
}

RationalMatrix induced_map(const RationalMatrix& f, const Subquotient& src, const Subquotient& dst) {
  if (f.cols() != src.ambient() || f.rows() != dst.ambient()) throw Error(kModule, "induced_map shape mismatch");
  for (const auto& b : src.bottom().basis()) {
    SparseVec w = f.apply(b);
    if (!dst.bottom().contains(w)) throw Error(kModule, "not well-defined: f(bottom) not in target bottom");
  }
  std::vector<SparseVec> cols;
  cols.reserve(src.dim());
  for (const auto& rep : src.representatives()) {
    auto c = dst.try_class_coords(f.apply(rep));
    if (!c) throw Error(kModule, "not well-defined: f(top) not in target top");
    cols.push_back(std::move(*c));
  }
  return RationalMatrix::from_columns(dst.dim(), cols);
}

}  // namespace hsc
