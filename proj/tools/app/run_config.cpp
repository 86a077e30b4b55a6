#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "sseries/errors.hpp"

namespace sseries::app {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) field_error(key, "missing");
  return j.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    field_error(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

ScalarExpr expression(const json& v, const std::string& field) {
  if (!v.is_string()) field_error(field, "expected an expression string");
  try {
    return parse(v.get<std::string>());
  } catch (const ParseError& e) {
    field_error(field, e.what());
  }
}

std::vector<ScalarExpr> expression_list(const json& v, const std::string& field,
                                        std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    field_error(field, "expected an array of " + std::to_string(n) + " expression strings");
  }
  std::vector<ScalarExpr> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(expression(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

MatrixExpr matrix_expr(const json& v, const std::string& field, std::size_t n) {
  if (!v.is_array() || v.size() != n) field_error(field, "expected " + std::to_string(n) + " rows");
  std::vector<ScalarExpr> entries;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = expression_list(v[i], field + "[" + std::to_string(i) + "]", n);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return MatrixExpr(n, std::move(entries));
}

Interval interval(const json& j) {
  const json& v = require(j, "interval");
  if (!v.is_array() || v.size() != 2) field_error("interval", "expected [a, b]");
  const Interval iv{number(v[0], "interval[0]"), number(v[1], "interval[1]")};
  if (!(iv.a < iv.b)) field_error("interval", "expected a < b");
  return iv;
}

Vector constants(const json& j, const char* key, std::size_t n) {
  const json& v = require(j, key);
  if (!v.is_array() || v.size() != n) {
    field_error(key, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(number(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return Vector(std::move(c));
}

SplitSpec parse_split(const json& j, bool has_user_split) {
  SplitSpec s;
  s.kind = has_user_split ? SplitSpec::Kind::User : SplitSpec::Kind::ConstantMean;
  if (!j.contains("split")) return s;
  const json& v = j.at("split");
  if (!v.is_object()) field_error("split", "expected an object");
  const json& strategy = require(v, "strategy");
  if (!strategy.is_string()) field_error("split.strategy", "expected a string");
  const auto name = strategy.get<std::string>();
  if (name == "user") s.kind = SplitSpec::Kind::User;
  else if (name == "constant_mean") s.kind = SplitSpec::Kind::ConstantMean;
  else if (name == "constant_at_point") s.kind = SplitSpec::Kind::ConstantAtPoint;
  else if (name == "diagonal") s.kind = SplitSpec::Kind::Diagonal;
  else field_error("split.strategy", "unknown strategy '" + name + "'");

  if (s.kind == SplitSpec::Kind::User && !has_user_split) {
    field_error("split.strategy", "'user' requires \"H\" and \"Z\" instead of \"A\"");
  }
  if (s.kind == SplitSpec::Kind::ConstantAtPoint) {
    s.point = number(require(v, "point"), "split.point");
  }
  return s;
}

FundamentalSpec parse_fundamental(const json& j, std::size_t n) {
  FundamentalSpec f;
  if (!j.contains("fundamental")) return f;
  const json& v = j.at("fundamental");
  if (!v.is_object()) field_error("fundamental", "expected an object");
  const json& mode = require(v, "mode");
  if (mode == "constant_h") return f;
  if (mode != "columns") field_error("fundamental.mode", "expected \"constant_h\" or \"columns\"");
  f.mode = FundamentalSpec::Mode::Columns;
  const json& cols = require(v, "columns");
  if (!cols.is_array() || cols.size() != n) {
    field_error("fundamental.columns", "expected " + std::to_string(n) + " columns");
  }
  for (std::size_t i = 0; i < n; ++i) {
    f.columns.emplace_back(
        expression_list(cols[i], "fundamental.columns[" + std::to_string(i) + "]", n));
  }
  return f;
}

SeriesOptions parse_options(const json& j) {
  SeriesOptions o;
  if (!j.contains("options")) return o;
  const json& v = j.at("options");
  if (!v.is_object()) field_error("options", "expected an object");
  if (v.contains("max_terms")) o.max_terms = count(v["max_terms"], "options.max_terms");
  if (v.contains("abs_tol")) o.abs_tol = number(v["abs_tol"], "options.abs_tol");
  if (v.contains("rel_tol")) o.rel_tol = number(v["rel_tol"], "options.rel_tol");
  if (v.contains("grid_nodes")) o.grid_nodes = count(v["grid_nodes"], "options.grid_nodes");
  if (v.contains("quadrature")) {
    const json& q = v["quadrature"];
    if (q == "trapezoid") o.quadrature = QuadratureRule::Trapezoid;
    else if (q == "end_corrected") o.quadrature = QuadratureRule::EndCorrectedTrapezoid;
    else field_error("options.quadrature", "expected \"trapezoid\" or \"end_corrected\"");
  }
  try {
    o.check();
  } catch (const std::invalid_argument& e) {
    field_error("options", e.what());
  }
  return o;
}

std::vector<OutputKind> parse_outputs(const json& j) {
  if (!j.contains("outputs")) return {OutputKind::SolutionCsv, OutputKind::DiagnosticsJson};
  const json& v = j.at("outputs");
  if (!v.is_array()) field_error("outputs", "expected an array of names");
  std::vector<OutputKind> out;
  for (const auto& name : v) {
    if (name == "solution-csv") out.push_back(OutputKind::SolutionCsv);
    else if (name == "terms-csv") out.push_back(OutputKind::TermsCsv);
    else if (name == "diagnostics-json") out.push_back(OutputKind::DiagnosticsJson);
    else if (name == "plot-data") out.push_back(OutputKind::PlotData);
    else field_error("outputs", "unknown output " + name.dump());
  }
  return out;
}

}  // namespace

std::string output_name(OutputKind k) {
  switch (k) {
    case OutputKind::SolutionCsv: return "solution-csv";
    case OutputKind::TermsCsv: return "terms-csv";
    case OutputKind::DiagnosticsJson: return "diagnostics-json";
    case OutputKind::PlotData: return "plot-data";
  }
  return "?";
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  const std::size_t n = count(require(j, "n"), "n");
  if (n == 0) field_error("n", "must be positive");

  const bool has_a = j.contains("A");
  const bool has_hz = j.contains("H") || j.contains("Z");
  if (has_a == has_hz) throw ConfigError("config: give exactly one of \"A\" or {\"H\", \"Z\"}");

  Problem::Coefficient coeff = WholeCoefficient{};
  if (has_a) {
    coeff = WholeCoefficient{matrix_expr(j["A"], "A", n)};
  } else {
    coeff = SplitCoefficient{matrix_expr(require(j, "H"), "H", n), matrix_expr(require(j, "Z"), "Z", n)};
  }
  std::optional<VectorExpr> forcing;
  if (j.contains("F")) forcing = VectorExpr(expression_list(j["F"], "F", n));

  const Interval iv = interval(j);
  const double x0 = number(require(j, "x0"), "x0");
  Vector c = constants(j, "c", n);

  return RunConfig{Problem(std::move(coeff), std::move(forcing), iv, x0, std::move(c)),
                   parse_split(j, has_hz), parse_fundamental(j, n), parse_options(j),
                   parse_outputs(j)};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw ConfigError(path.string() + ": " + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_json_file(path));
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.terms) cfg.options.max_terms = *o.terms;
  if (o.grid) cfg.options.grid_nodes = *o.grid;
  if (o.abs_tol) cfg.options.abs_tol = *o.abs_tol;
  if (o.rel_tol) cfg.options.rel_tol = *o.rel_tol;
  try {
    cfg.options.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("flags: ") + e.what());
  }
}

PreparedRun prepare(const RunConfig& cfg) {
  const Problem& p = cfg.problem;
  const Grid grid(p.interval().a, p.interval().b, cfg.options.grid_nodes);

  SplitStrategy strategy = ConstantMean{};
  switch (cfg.split.kind) {
    case SplitSpec::Kind::User: {
      const auto& s = p.split();
      strategy = UserGiven{s.H, s.Z};
      break;
    }
    case SplitSpec::Kind::ConstantMean: strategy = ConstantMean{}; break;
    case SplitSpec::Kind::ConstantAtPoint: strategy = ConstantAtPoint{*cfg.split.point}; break;
    case SplitSpec::Kind::Diagonal: strategy = DiagonalOfA{}; break;
  }

  const ValidationReport pre = validate(p, grid);
  if (!pre.ok()) throw ConfigError("invalid problem: " + pre.errors().front().message);

  Problem split = [&] {
    try {
      return apply_split(p, strategy, grid);
    } catch (const ShapeError& e) {
      throw ConfigError(std::string("split: ") + e.what());
    }
  }();
  const ValidationReport post = validate(split, grid);
  if (!post.ok()) throw ConfigError("invalid split: " + post.errors().front().message);

  try {
    if (cfg.fundamental.mode == FundamentalSpec::Mode::Columns) {
      FundamentalMatrixTable t = fundamental_user(cfg.fundamental.columns, grid);
      return PreparedRun{std::move(split), grid, std::move(t)};
    }
    if (!split.split().H.is_constant()) {
      throw ConfigError(
          "fundamental: H depends on x; supply \"fundamental\": {\"mode\": \"columns\", ...}");
    }
    const Matrix h = eval_matrix(split.split().H, p.x0());
    FundamentalMatrixTable t = fundamental_constant_H(h, grid, p.x0());
    return PreparedRun{std::move(split), grid, std::move(t)};
  } catch (const WronskianError& e) {
    throw ConfigError(std::string("fundamental: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("fundamental: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

CompanionSpec parse_companion_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  const std::size_t order = count(require(j, "order"), "order");
  if (order == 0) field_error("order", "must be at least 1");
  std::vector<ScalarExpr> coeffs = expression_list(require(j, "coefficients"), "coefficients", order);
  ScalarExpr forcing = j.contains("forcing") ? expression(j["forcing"], "forcing")
                                             : ScalarExpr::constant(0.0);
  const Interval iv = interval(j);
  const double x0 = number(require(j, "x0"), "x0");
  return CompanionSpec{order, std::move(coeffs), std::move(forcing), iv, x0,
                       constants(j, "c", order)};
}

json reduce_config(const json& j) {
  const Problem p = companion_reduce(parse_companion_config(j));
  const auto& a = std::get<WholeCoefficient>(p.coefficient()).A;

  json out;
  out["n"] = p.dim();
  out["interval"] = {p.interval().a, p.interval().b};
  out["x0"] = p.x0();
  out["c"] = std::vector<double>(p.c().data().begin(), p.c().data().end());
  out["A"] = a.to_strings();
  out["F"] = p.forcing()->to_strings();
  for (const char* key : {"split", "fundamental", "options", "outputs"}) {
    if (j.contains(key)) out[key] = j[key];
  }
  return out;
}

}  // namespace sseries::app
