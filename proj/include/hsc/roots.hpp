#pragma once

#include "hsc/lie.hpp"

#include <set>

namespace hsc {

using Root = std::vector<int>;  // coefficients in the simple roots

struct RootDatum {
  std::string type;  // "A1".."A4", "B2", "G2"
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = α_j(h_i)
  std::vector<Root> positive;            // by height, then lexicographically
  // Chevalley basis: h_1..h_n, e_α (α positive, in order), f_α (same order).
  LieAlgebra g;

  std::size_t n_positive() const { return positive.size(); }
  std::size_t h_index(int i) const { return static_cast<std::size_t>(i); }
  std::size_t e_index(std::size_t a) const { return rank + a; }
  std::size_t f_index(std::size_t a) const { return rank + positive.size() + a; }
  long root_index(const Root& r) const;  // index into positive, or -1
  // Simple roots (1-based labels) occurring in a positive root.
  std::set<int> support(std::size_t a) const;
};

RootDatum build_root_datum(const std::string& type);
std::vector<std::string> supported_types();

// Positive roots from a Cartan matrix, by height.
std::vector<Root> positive_roots(const std::vector<std::vector<int>>& cartan);

struct WeylCounts {
  std::size_t W = 0, W_P = 0, W_PK = 0;
  std::size_t W_over_P = 0;         // |W^P| = |W / W_P|
  std::size_t WPK_over_WP = 0;      // |W_{P_K} / W_P|
  std::size_t W_over_PK = 0;        // |W / W_{P_K}|
  std::vector<std::size_t> by_length_P;   // minimal coset representatives of W/W_P by length
  std::vector<std::size_t> by_length_PK;  // same for W/W_{P_K}
};

// levi, K: 1-based simple-root labels with levi ⊆ K.
WeylCounts weyl_counts(const RootDatum& rd, const std::set<int>& levi, const std::set<int>& K);

}  // namespace hsc
