#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "run_config.hpp"
#include "sseries/series.hpp"

namespace sseries::app {

/// Process exit codes. Solve encodes the stop reason; compare adds
/// ThresholdExceeded for a finished series that disagrees with the oracle.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitMaxTerms = 2,
  kExitDiverging = 3,
  kExitThresholdExceeded = 4,
};

int exit_code_for(StopReason r) noexcept;

struct SolveArgs {
  std::filesystem::path config;
  Overrides overrides;
  std::filesystem::path out_dir = ".";
};

struct CompareArgs {
  std::filesystem::path config;
  Overrides overrides;
  double threshold = 1e-3;
};

struct ReduceArgs {
  std::filesystem::path config;
  /// When empty the system config is printed to `out`.
  std::optional<std::filesystem::path> out_dir;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);
int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err);

// Output writers, exposed for tests.
void write_solution_csv(std::ostream& os, const GridVectorFunction& s);
void write_terms_csv(std::ostream& os, const SeriesSolution& sol);
void write_plot_data(std::ostream& os, const SeriesSolution& sol);
nlohmann::json diagnostics_json(const SeriesSolution& sol, std::size_t grid_nodes,
                                double elapsed_ms);

}  // namespace sseries::app
