#pragma once

#include "hsc/bk.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>

namespace hsc::cli {

inline constexpr const char* kSchema = "hsc-report/1";

// Algebra file: `dim n`, optional `labels a b ...`, then `i j -> k:c, k':c'`
// lines (1-based). `#` starts a comment. Errors name the line.
LieAlgebra parse_algebra(std::istream& in, const std::string& source = "<input>");
LieAlgebra load_algebra(const std::string& path);

// "", "1,2", "1 2", "{1, 2}"
std::set<int> parse_index_set(const std::string& s, const std::string& field);
// Comma-separated vectors; each a sum of [coef*]name terms, name a label or
// a 1-based index. "h", "e+f", "2*x1-1/2*x3".
std::vector<SparseVec> parse_basis(const LieAlgebra& g, const std::string& text, const std::string& field);

struct Config {
  std::string command;  // cohomology | spectral | bk-verify | weyl
  std::string preset, levi, t_support, K;
  std::string custom, k, ideal, module = "trivial";
  int jobs = 1;
  std::uint64_t seed = 20240611ULL;
  int samples = 16;
};

struct Result {
  nlohmann::ordered_json report;  // machine report, no timings
  std::string text;                // human-readable
  bool ok = false;
};

// Throws InputError for bad configs; other Errors come from the computation.
Result run(const Config& cfg);

}  // namespace hsc::cli
