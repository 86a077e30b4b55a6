#include <iostream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "app/commands.hpp"

namespace {

void add_series_flags(CLI::App* cmd, sseries::app::Overrides& o) {
  cmd->add_option("--terms", o.terms, "Maximum number of series terms");
  cmd->add_option("--grid", o.grid, "Grid node count (odd)");
  cmd->add_option("--abs-tol", o.abs_tol, "Absolute stopping tolerance");
  cmd->add_option("--rel-tol", o.rel_tol, "Relative stopping tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sseries::app;

  CLI::App app{"Special-series solver for linear systems y' = A(x) y + F(x)"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Sum the series and write the requested outputs");
  solve_cmd->add_option("--config", solve.config, "Problem config (JSON)")->required();
  solve_cmd->add_option("--out", solve.out_dir, "Output directory");
  add_series_flags(solve_cmd, solve.overrides);

  CompareArgs compare;
  auto* compare_cmd =
      app.add_subcommand("compare", "Check the series against a direct RK4 integration");
  compare_cmd->add_option("--config", compare.config, "Problem config (JSON)")->required();
  compare_cmd->add_option("--threshold", compare.threshold, "Largest acceptable sup difference");
  add_series_flags(compare_cmd, compare.overrides);

  ReduceArgs reduce;
  auto* reduce_cmd =
      app.add_subcommand("reduce", "Rewrite an n-th order equation as a first-order system");
  reduce_cmd->add_option("--config", reduce.config, "Order-n config (JSON)")->required();
  reduce_cmd->add_option("--out", reduce.out_dir, "Directory for system.json (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  if (*solve_cmd) return cmd_solve(solve, std::cout, std::cerr);
  if (*compare_cmd) return cmd_compare(compare, std::cout, std::cerr);
  return cmd_reduce(reduce, std::cout, std::cerr);
}
