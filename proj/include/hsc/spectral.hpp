#pragma once

#include "hsc/cochains.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace hsc {

// A relative complex whose basis vectors are homogeneous for a grading by
// "level" (the filtration degree of each basis vector). F_p C^n is the span
// of basis vectors of level >= p.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  // Level of a domain tuple = number of its positions below `split`
  // (the J_L positions come first in the domain).
  FilteredComplex(const RelativeComplex& c, std::size_t split);

  const RelativeComplex& complex() const { return *c_; }
  int top() const { return c_->top_degree(); }
  std::size_t dim(int n) const { return c_->dim(n); }
  int basis_level(int n, std::size_t i) const { return levels_.at(n).at(i); }

  Subspace F(int p, int n) const;
  // F_p C^n(r) = {c ∈ F_p C^n : dc ∈ F_{p+r} C^{n+1}}, negative indices read as 0.
  Subspace F(int p, int n, int r) const;
  // Largest p with c ∈ F_p C^n; n+1 for c = 0. c in relative coordinates.
  int filtration_level(int n, const SparseVec& c) const;

 private:
  Subspace F_cond(int p, int n, int t) const;

  const RelativeComplex* c_ = nullptr;
  std::vector<std::vector<int>> levels_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int>, Subspace> cache_;
};

struct PageCell {
  Subspace Z, B;       // Z_r^{pq}, B_r^{pq}
  Subquotient E;       // Z/B
  Subspace G;          // G_r^{pq}
  Subquotient EG;      // F_pC(r) / G_r
  RationalMatrix iso;  // EG → E, induced by the identity
};

struct Page {
  int r = 0;
  std::map<std::pair<int, int>, PageCell> cells;
  // d_r on E_r in Z/B coordinates, keyed by source (p, q); computed through
  // representatives in F_pC(r) modulo G_r.
  std::map<std::pair<int, int>, RationalMatrix> d;
  // For r <= 1 only: the coset formula d(z + B_r) = dz + B_r.
  std::map<std::pair<int, int>, RationalMatrix> d_coset;

  std::size_t dim(int p, int q) const;
  std::size_t d_rank(int p, int q) const;
};

struct PageState {
  std::vector<Page> pages;  // pages[r]
  Page infinity;            // Z_∞/B_∞ (no differentials)
  int first_degenerate_page = -1;
  // Smallest r >= 2 with Z_r = Z_∞ and B_r = B_∞ everywhere.
  int degeneration_page = -1;
  int top = 0;

  const Page& page(int r) const;
  std::size_t dim(int r, int p, int q) const { return page(r).dim(p, q); }
};

// Pages E_0 .. E_R where R is the first page >= max(2, min_r) at which
// the sequence has degenerated, or max_r if given and smaller.
PageState compute_pages(const FilteredComplex& fc, int max_r = -1, int jobs = 1);

// Checks of the page structure; each returns a list of failures.
std::vector<std::string> check_page_chain(const FilteredComplex& fc, const PageState& ps);
// Preimages of ker d_r and im d_r under Z_r → E_r are Z_{r+1} and B_{r+1}.
std::vector<std::string> check_next_page(const FilteredComplex& fc, const PageState& ps, int r);
// Σ_p dim E_∞^{p,n-p} = dim H^n, and gr^p H^n has the dimension of E_∞^{pq}.
std::vector<std::string> check_convergence(const FilteredComplex& fc, const PageState& ps);

}  // namespace hsc
