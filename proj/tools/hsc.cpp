#include "CLI11.hpp"
#include "hsc/cli.hpp"
#include "hsc/parallel.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace hsc;

int main(int argc, char** argv) {
  CLI::App app{"Relative Lie algebra cohomology, Hochschild-Serre spectral sequences and parabolic BK rings"};
  app.set_config("--config", "", "key = value config file; flags override it");
  cli::Config cfg;
  cfg.jobs = default_jobs();
  std::string out;
  bool quiet = false;
  app.add_option("--jobs", cfg.jobs, "worker threads")->envname("HSC_JOBS");
  app.add_option("--out", out, "write the machine report (JSON) here");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--samples", cfg.samples, "random samples per randomized check");
  app.add_option("--preset", cfg.preset, "root system: A1..A4, B2, G2");
  app.add_option("--levi", cfg.levi, "simple roots of the Levi factor, e.g. \"1,2\"");
  app.add_option("--t-support", cfg.t_support, "support of t (disjoint from the Levi set)");
  app.add_option("--K", cfg.K, "K for weyl (defaults to the Levi set)");
  app.add_option("--custom", cfg.custom, "algebra file");
  app.add_option("--k", cfg.k, "basis of k, e.g. \"h\" or \"e1+e2,e3\"");
  app.add_option("--ideal", cfg.ideal, "basis of the ideal");
  app.add_option("--module", cfg.module, "trivial or adjoint");
  app.add_flag("--quiet", quiet, "no human-readable report");
  for (const char* name : {"cohomology", "spectral", "bk-verify", "weyl"}) app.add_subcommand(name)->fallthrough();
  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    cli::Result r = cli::run(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!quiet) std::cout << r.text << "  wall time " << secs << " s\n";
    if (!out.empty()) {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
      }
      f << r.report.dump(2) << "\n";
    }
    return r.ok ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
