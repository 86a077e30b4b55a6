#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "sseries/errors.hpp"
#include "sseries/oracle.hpp"

namespace sseries::app {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

struct SolvedRun {
  PreparedRun run;
  SeriesSolution solution;
  FundamentalResidual fundamental_check;
  double elapsed_ms;
};

RunConfig load_with_overrides(const std::filesystem::path& config, const Overrides& overrides) {
  RunConfig cfg = load_run_config(config);
  apply_overrides(cfg, overrides);
  return cfg;
}

SolvedRun solve_run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  PreparedRun run = prepare(cfg);

  std::vector<Matrix> h;
  h.reserve(run.grid.size());
  for (double x : run.grid.nodes()) h.push_back(eval_matrix(run.problem.split().H, x));
  const FundamentalResidual check = check_fundamental(run.table, h);

  SeriesSolution sol = solve_series(run.problem, run.table, cfg.options);
  const auto stop = std::chrono::steady_clock::now();
  return SolvedRun{std::move(run), std::move(sol), check,
                   std::chrono::duration<double, std::milli>(stop - start).count()};
}

// Runs `body`, mapping user-facing failures to exit code 1.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace

int exit_code_for(StopReason r) noexcept {
  switch (r) {
    case StopReason::ToleranceMet: return kExitOk;
    case StopReason::MaxTermsReached: return kExitMaxTerms;
    case StopReason::Diverging: return kExitDiverging;
  }
  return kExitInputError;
}

void write_solution_csv(std::ostream& os, const GridVectorFunction& s) {
  const std::size_t n = s.values.empty() ? 0 : s.values.front().size();
  os << "x";
  for (std::size_t i = 1; i <= n; ++i) os << ",y" << i;
  os << "\n";
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    os << fmt17(s.grid[k]);
    for (double v : s.values[k].data()) os << ',' << fmt17(v);
    os << "\n";
  }
}

void write_terms_csv(std::ostream& os, const SeriesSolution& sol) {
  const std::size_t n = sol.partial_sum.values.front().size();
  os << "x,term";
  for (std::size_t i = 1; i <= n; ++i) os << ",y" << i;
  os << "\n";
  for (std::size_t j = 0; j < sol.terms.size(); ++j) {
    const auto& t = sol.terms[j];
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      os << fmt17(t.grid[k]) << ',' << j;
      for (double v : t.values[k].data()) os << ',' << fmt17(v);
      os << "\n";
    }
  }
}

void write_plot_data(std::ostream& os, const SeriesSolution& sol) {
  for (std::size_t j = 0; j < sol.terms.size(); ++j) {
    if (j > 0) os << "\n\n";
    os << "# term " << j << "\n";
    const auto& t = sol.terms[j];
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      os << fmt17(t.grid[k]);
      for (double v : t.values[k].data()) os << ' ' << fmt17(v);
      os << "\n";
    }
  }
}

json diagnostics_json(const SeriesSolution& sol, std::size_t grid_nodes, double elapsed_ms) {
  json j;
  j["stop_reason"] = std::string(to_string(sol.stop_reason));
  j["converged"] = sol.converged;
  j["n_terms"] = sol.terms.size();
  j["term_sup_norms"] = sol.term_sup_norms;
  j["residual_sup"] = sol.residual_sup;
  j["grid_nodes"] = grid_nodes;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(args.config, args.overrides);
    SolvedRun r = solve_run(cfg);
    const SeriesSolution& sol = r.solution;

    std::filesystem::create_directories(args.out_dir);
    for (OutputKind kind : cfg.outputs) {
      switch (kind) {
        case OutputKind::SolutionCsv: {
          auto os = open_output(args.out_dir / "solution.csv");
          write_solution_csv(os, sol.partial_sum);
          break;
        }
        case OutputKind::TermsCsv: {
          auto os = open_output(args.out_dir / "terms.csv");
          write_terms_csv(os, sol);
          break;
        }
        case OutputKind::DiagnosticsJson: {
          json d = diagnostics_json(sol, r.run.grid.size(), r.elapsed_ms);
          d["fundamental_residual"] = r.fundamental_check.max_residual;
          d["fundamental_flagged"] = r.fundamental_check.flagged;
          auto os = open_output(args.out_dir / "diagnostics.json");
          os << d.dump(2) << "\n";
          break;
        }
        case OutputKind::PlotData: {
          auto os = open_output(args.out_dir / "plot.dat");
          write_plot_data(os, sol);
          break;
        }
      }
    }

    if (r.fundamental_check.flagged) {
      err << "warning: fundamental matrix does not satisfy M' = H M (residual "
          << fmt17(r.fundamental_check.max_residual) << ")\n";
    }
    out << "stop_reason " << to_string(sol.stop_reason) << "\n"
        << "n_terms " << sol.terms.size() << "\n"
        << "residual_sup " << fmt17(sol.residual_sup) << "\n";
    return exit_code_for(sol.stop_reason);
  });
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SolvedRun r = solve_run(load_with_overrides(args.config, args.overrides));
    const Problem& p = r.run.problem;
    const std::size_t k0 = *r.run.grid.index_of(p.x0());
    const Vector y0 = r.run.table.M[k0] * p.c();

    const oracle::OracleSolution rk4 = [&] {
      try {
        return oracle::rk4_solve(p, r.run.grid, y0);
      } catch (const BlowUpError& e) {
        throw ConfigError(std::string("oracle: ") + e.what());
      }
    }();
    const oracle::Comparison cmp = oracle::compare(r.solution.partial_sum.values, rk4.values);

    out << "stop_reason " << to_string(r.solution.stop_reason) << "\n"
        << "n_terms " << r.solution.terms.size() << "\n"
        << "sup_diff " << fmt17(cmp.sup_diff) << "\n"
        << "threshold " << fmt17(args.threshold) << "\n";
    if (cmp.sup_diff <= args.threshold) return int{kExitOk};
    if (r.solution.stop_reason != StopReason::ToleranceMet) {
      return exit_code_for(r.solution.stop_reason);
    }
    return int{kExitThresholdExceeded};
  });
}

int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json system = reduce_config(read_json_file(args.config));
    if (args.out_dir) {
      std::filesystem::create_directories(*args.out_dir);
      auto os = open_output(*args.out_dir / "system.json");
      os << system.dump(2) << "\n";
      out << "wrote " << (*args.out_dir / "system.json").string() << "\n";
    } else {
      out << system.dump(2) << "\n";
    }
    return int{kExitOk};
  });
}

}  // namespace sseries::app
