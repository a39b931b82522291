#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "klat/cli.hpp"
#include "klat/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"k-lateral Nash equilibrium toolkit"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads,
                 "worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);

  bool json = false;
  double tol = 1e-9;
  long long budget = 1'000'000;

  std::string analyze_path;
  int analyze_max_k = 8;
  auto* analyze = app.add_subcommand(
      "analyze", "filtration and criterion cross-check of a game file");
  analyze->add_option("file", analyze_path, "game file")->required();
  analyze->add_option("--max-k", analyze_max_k, "largest coalition size");
  analyze->add_option("--tol", tol, "tolerance for float comparisons");
  analyze->add_option("--budget", budget, "enumeration budget");
  analyze->add_flag("--json", json, "machine-readable report");

  int xi_n = 0, xi_k = 0;
  std::string xi_mode = "exact";
  auto* xi = app.add_subcommand(
      "xi", "clique cover of the Kneser graph K(n,k)");
  xi->add_option("n", xi_n, "number of players")->required();
  xi->add_option("k", xi_k, "coalition size")->required();
  xi->add_option("mode", xi_mode, "exact or greedy");
  xi->add_flag("--json", json, "machine-readable report");

  std::string scan_path;
  int scan_k = 1;
  auto* scan = app.add_subcommand(
      "scan", "per-parameter equilibrium table of a family file");
  scan->add_option("file", scan_path, "family file")->required();
  scan->add_option("-k,--k", scan_k, "coalition size");
  scan->add_option("--tol", tol, "tolerance for float comparisons");
  scan->add_option("--budget", budget, "enumeration budget");
  scan->add_flag("--json", json, "machine-readable report");

  std::string demo_name;
  unsigned long long seed = 0;
  auto* demo = app.add_subcommand(
      "demo", "worked examples: date, majority, inspection, cournot, witness3");
  demo->add_option("name", demo_name, "demo name")->required();
  demo->add_option("--seed", seed, "seed for randomized demos");
  demo->add_flag("--json", json, "machine-readable report");

  auto* witness = app.add_subcommand(
      "witness3", "3-player triple with a bilateral equilibrium at (2,2,2)");
  witness->add_option("--seed", seed, "sampling seed");
  witness->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's exit-code zoo onto the documented 0/1 contract.
    int code = app.exit(e);
    return code == 0 ? 0 : klat::cli::kInvalidInput;
  }
  klat::set_threads(threads);

  if (analyze->parsed())
    return klat::cli::run_analyze(analyze_path, analyze_max_k, tol, json,
                                  budget, std::cout, std::cerr);
  if (xi->parsed())
    return klat::cli::run_xi(xi_n, xi_k, xi_mode, json, std::cout, std::cerr);
  if (scan->parsed())
    return klat::cli::run_scan(scan_path, scan_k, tol, json, budget, std::cout,
                               std::cerr);
  if (demo->parsed())
    return klat::cli::run_demo(demo_name, seed, json, std::cout, std::cerr);
  if (witness->parsed())
    return klat::cli::run_demo("witness3", seed, json, std::cout, std::cerr);
  return klat::cli::kInvalidInput;
}
