#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "picklab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"picklab: Pick interpolation solvability tests and the finite "
               "multiplier-algebra distance laboratory"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a JSON problem file");
  std::string path;
  std::string out_path;
  picklab::RunOverrides overrides;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int grid = 0;
  int restarts = 0;
  int budget = 0;
  double threshold = 0.0;
  int max_n = 0;

  run->add_option("problem", path, "problem file (JSON)")->required();
  auto* tol_opt = run->add_option("--tol", tol, "global tolerance override");
  auto* seed_opt = run->add_option("--seed", seed, "seed override (finite-search)");
  run->add_flag("--csv", overrides.csv, "emit the per-sigma table as CSV");
  run->add_option("--out", out_path, "write the report to a file instead of stdout");
  auto* grid_opt = run->add_option("--grid", grid, "h1-sweep grid density override");
  auto* restarts_opt =
      run->add_option("--restarts", restarts, "optimizer restart count override");
  auto* budget_opt = run->add_option("--budget", budget, "search budget override");
  auto* threshold_opt =
      run->add_option("--threshold", threshold, "search gap threshold override");
  auto* maxn_opt = run->add_option("--max-n", max_n, "lattice enumeration cap override");

  CLI11_PARSE(app, argc, argv);

  if (*tol_opt) overrides.tol = tol;
  if (*seed_opt) overrides.seed = seed;
  if (*grid_opt) overrides.grid = grid;
  if (*restarts_opt) overrides.restarts = restarts;
  if (*budget_opt) overrides.budget = budget;
  if (*threshold_opt) overrides.threshold = threshold;
  if (*maxn_opt) overrides.max_n = max_n;

  const picklab::RunResult result = picklab::run_problem_file(path, overrides);
  if (!result.error.empty()) {
    std::cerr << "picklab: " << result.error << "\n";
  }
  if (!result.output.empty()) {
    if (out_path.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "picklab: cannot write '" << out_path << "'\n";
        return 2;
      }
      out << result.output;
    }
  }
  return result.exit_code;
}
