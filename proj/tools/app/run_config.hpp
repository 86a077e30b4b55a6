#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sseries/fundmat.hpp"
#include "sseries/problem.hpp"
#include "sseries/series.hpp"

namespace sseries::app {

/// Malformed or inconsistent config; the message names the field (or the
/// line/column for JSON syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputKind { SolutionCsv, TermsCsv, DiagnosticsJson, PlotData };

struct FundamentalSpec {
  enum class Mode { ConstantH, Columns };
  Mode mode = Mode::ConstantH;
  std::vector<VectorExpr> columns;
};

struct SplitSpec {
  enum class Kind { User, ConstantMean, ConstantAtPoint, Diagonal };
  Kind kind = Kind::ConstantMean;
  std::optional<double> point;
};

struct RunConfig {
  Problem problem;
  SplitSpec split;
  FundamentalSpec fundamental;
  SeriesOptions options;
  std::vector<OutputKind> outputs;
};

/// Command-line overrides; each set field replaces the config value.
struct Overrides {
  std::optional<std::size_t> terms;
  std::optional<std::size_t> grid;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

void apply_overrides(RunConfig& cfg, const Overrides& o);

/// Everything needed to run the series: the split problem, its grid and the
/// fundamental table.
struct PreparedRun {
  Problem problem;
  Grid grid;
  FundamentalMatrixTable table;
};

/// Validates, splits and tabulates. Throws ConfigError for anything the user
/// must fix (validation errors, x-dependent H without columns, ...).
PreparedRun prepare(const RunConfig& cfg);

/// order-n config -> CompanionSpec. Throws ConfigError.
CompanionSpec parse_companion_config(const nlohmann::json& j);

/// First-order system config equivalent to `j` (an order-n config); keys
/// "split", "fundamental", "options" and "outputs" are carried over.
nlohmann::json reduce_config(const nlohmann::json& j);

std::string output_name(OutputKind k);

}  // namespace sseries::app
