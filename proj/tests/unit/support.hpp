#pragma once

#include "hsc/linalg.hpp"

#include <cstdlib>
#include <random>

namespace testsupport {

// Randomized checks read HSC_TEST_SEED; the default is fixed.
inline std::uint64_t seed() {
  const char* s = std::getenv("HSC_TEST_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 20240611ULL;
}

inline hsc::RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density_pct = 40,
                                         int range = 3) {
  std::uniform_int_distribution<int> pick(0, 99), val(-range, range);
  std::vector<hsc::Triplet> t;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pick(rng) < density_pct) {
        int v = val(rng);
        if (v) t.push_back({static_cast<hsc::Index>(i), static_cast<hsc::Index>(j), hsc::Rational(v)});
      }
  return hsc::RationalMatrix::from_triplets(r, c, std::move(t));
}

inline hsc::SparseVec random_vec(std::mt19937_64& rng, std::size_t n, int range = 3) {
  std::uniform_int_distribution<int> val(-range, range);
  hsc::SparseVec v;
  for (std::size_t i = 0; i < n; ++i) {
    hsc::Rational q(val(rng), 1 + (i % 3));
    q.canonicalize();
    v.push(static_cast<hsc::Index>(i), q);
  }
  return v;
}

}  // namespace testsupport
