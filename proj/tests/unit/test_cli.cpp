#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hsc;
namespace fs = std::filesystem;

namespace {

const char* kSl2 = "# sl2\ndim 3\nlabels h e f\n1 2 -> 2:2\n1 3 -> 3:-2\n2 3 -> 1:1\n";

LieAlgebra parse(const std::string& s) {
  std::istringstream in(s);
  return cli::parse_algebra(in, "test");
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("hsc_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_tool(const std::string& args) {
  int rc = std::system((std::string(HSC_TOOL) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("algebra file parsing") {
  LieAlgebra g = parse(kSl2);
  CHECK(g.dim() == 3);
  CHECK(g.label(1) == "e");
  CHECK(g.bracket(1, 0) == scaled(unit_vec(1), -2));
  // reversed pair and fractional coefficients
  LieAlgebra a = parse("dim 2\n2 1 -> 2:-1/2\n");
  CHECK(a.bracket(0, 1) == scaled(unit_vec(1), Rational(1, 2)));

  auto error_of = [](const std::string& s) {
    try {
      parse(s);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("1 2 -> 1:1\n").find("test:1") != std::string::npos);
  CHECK(error_of("dim 2\n1 3 -> 1:1\n").find("test:2") != std::string::npos);
  CHECK(error_of("dim 2\n1 2 -> 1:x\n").find("bad coefficient") != std::string::npos);
  CHECK(error_of("dim 2\n1 2 -> 1:1\n2 1 -> 1:1\n").find("conflicts with line 2") != std::string::npos);
  CHECK(error_of("dim 2\n1 1 -> 1:1\n").find("must be zero") != std::string::npos);
  CHECK(error_of("dim 3\n1 2 -> 3:1\n1 3 -> 1:1\n").find("not a Lie algebra") != std::string::npos);
  CHECK(error_of("dim 2\nlabels a\n").find("label count") != std::string::npos);
}

TEST_CASE("index sets and bases") {
  CHECK(cli::parse_index_set("", "levi").empty());
  CHECK(cli::parse_index_set("{1, 3}", "levi") == std::set<int>{1, 3});
  CHECK(cli::parse_index_set("2 1", "levi") == std::set<int>{1, 2});
  CHECK_THROWS_AS(cli::parse_index_set("1,x", "levi"), InputError);
  CHECK_THROWS_AS(cli::parse_index_set("1,1", "levi"), InputError);
  LieAlgebra g = parse(kSl2);
  auto b = cli::parse_basis(g, "h, e+f, 2*e-1/2*3", "k");
  REQUIRE(b.size() == 3);
  CHECK(b[0] == unit_vec(0));
  CHECK(b[1] == add(unit_vec(1), unit_vec(2)));
  CHECK(b[2] == add(scaled(unit_vec(1), 2), scaled(unit_vec(2), Rational(-1, 2))));
  CHECK_THROWS_AS(cli::parse_basis(g, "z", "k"), InputError);
  CHECK_THROWS_AS(cli::parse_basis(g, "4", "k"), InputError);
  CHECK_THROWS_AS(cli::parse_basis(g, "e-e", "k"), InputError);
}

TEST_CASE("reports") {
  fs::path dir = scratch();
  std::ofstream(dir / "sl2.alg") << kSl2;
  cli::Config c;
  c.command = "cohomology";
  c.custom = (dir / "sl2.alg").string();
  c.k = "h";
  cli::Result r = cli::run(c);
  CHECK(r.ok);
  CHECK(r.report["schema"] == cli::kSchema);
  CHECK(r.report["results"]["betti"] == nlohmann::ordered_json({1, 0, 1}));
  // round trip
  const std::string text = r.report.dump(2);
  CHECK(nlohmann::ordered_json::parse(text) == r.report);
  CHECK(nlohmann::ordered_json::parse(text).dump(2) == text);

  cli::Config w;
  w.command = "weyl";
  w.preset = "A2";
  cli::Result wr = cli::run(w);
  CHECK(wr.report["results"]["W"] == 6);
  CHECK(wr.report["results"]["W_over_P"] == 6);

  cli::Config bk;
  bk.command = "bk-verify";
  bk.preset = "A2";
  bk.t_support = "1";
  cli::Result br = cli::run(bk);
  CHECK(br.ok);
  CHECK(br.report["results"]["degeneration_page"] == 2);
  CHECK(br.report["results"]["betti"] == nlohmann::ordered_json({1, 0, 2, 0, 2, 0, 1}));
  CHECK(br.report["results"]["factorization"] == "(1 + q)(1 + q + q^2)");
  CHECK(cli::run(bk).report.dump() == br.report.dump());

  cli::Config bad = bk;
  bad.custom = "x.alg";
  CHECK_THROWS_AS(cli::run(bad), InputError);
  bad = c;
  bad.module = "coadjoint";
  CHECK_THROWS_AS(cli::run(bad), InputError);
  bad = c;
  bad.k = "e";
  bad.ideal = "e";
  bad.command = "spectral";
  CHECK_THROWS_AS(cli::run(bad), InputError);  // span(e) is not an ideal
  fs::remove_all(dir);
}

TEST_CASE("executable: exit codes and byte-identical reports") {
  fs::path dir = scratch();
  std::ofstream(dir / "sl2.alg") << kSl2;
  const std::string alg = (dir / "sl2.alg").string();
  CHECK(run_tool("weyl --preset A2 --levi \"\"") == 0);
  CHECK(run_tool("cohomology --custom " + alg + " --k h") == 0);
  CHECK(run_tool("cohomology --custom " + alg + " --k q") == 2);
  CHECK(run_tool("cohomology --custom /nonexistent.alg --k h") == 2);
  CHECK(run_tool("bk-verify --preset E8") == 2);
  CHECK(run_tool("bk-verify --preset A2 --levi 1 --t-support 1") == 2);
  CHECK(run_tool("--no-such-flag weyl") == 2);
  CHECK(run_tool("") == 2);
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  CHECK(run_tool("bk-verify --preset A2 --levi \"\" --t-support 1 --out " + a) == 0);
  CHECK(run_tool("bk-verify --preset A2 --levi \"\" --t-support 1 --jobs 2 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::ordered_json::parse(slurp(a)).dump(2) + "\n" == slurp(a));
  std::ofstream(dir / "cfg.toml") << "preset = \"A2\"\nt-support = \"1\"\n";
  const std::string c = (dir / "c.json").string();
  CHECK(run_tool("bk-verify --config " + (dir / "cfg.toml").string() + " --out " + c) == 0);
  CHECK(slurp(a) == slurp(c));
  fs::remove_all(dir);
}
