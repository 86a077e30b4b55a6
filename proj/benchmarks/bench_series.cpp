#include <benchmark/benchmark.h>

#include <cmath>

#include "sseries/fundmat.hpp"
#include "sseries/oracle.hpp"
#include "sseries/series.hpp"

using namespace sseries;

namespace {

MatrixExpr worked_H() { return MatrixExpr::parse({{"2", "3"}, {"-1", "-2"}}); }

MatrixExpr worked_Z() {
  return MatrixExpr::parse({{"exp(-2*x) - 3*exp(2*x)", "exp(-2*x) - 9*exp(2*x)"},
                            {"exp(2*x) - exp(-2*x)", "3*exp(2*x) - exp(-2*x)"}});
}

Problem worked_problem() {
  return Problem(SplitCoefficient{worked_H(), worked_Z()}, std::nullopt, {0.0, 1.0}, 0.0, Vector{1.0, 1.0});
}

Matrix random_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = std::sin(1.0 + 3.0 * i + 7.0 * j);
  return m;
}

}  // namespace

static void BM_MatExp(benchmark::State& state) {
  const Matrix a = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(a));
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_MatInv(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n) + static_cast<double>(n) * Matrix::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(mat_inv(a));
}
BENCHMARK(BM_MatInv)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_FundamentalTable(benchmark::State& state) {
  const Grid g(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const Matrix h{{2, 3}, {-1, -2}};
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_constant_H(h, g, 0.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FundamentalTable)->Arg(201)->Arg(1001)->Arg(5001)->Complexity(benchmark::oN);

static void BM_SolveSeriesWorked(benchmark::State& state) {
  SeriesOptions o;
  o.grid_nodes = static_cast<std::size_t>(state.range(0));
  const Grid g(0.0, 1.0, o.grid_nodes);
  const auto table = fundamental_constant_H(Matrix{{2, 3}, {-1, -2}}, g, 0.0);
  const Problem p = worked_problem();
  for (auto _ : state) benchmark::DoNotOptimize(solve_series(p, table, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveSeriesWorked)->Arg(201)->Arg(1001)->Arg(5001)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

static void BM_Rk4Worked(benchmark::State& state) {
  const Grid g(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const Problem p = worked_problem();
  for (auto _ : state) benchmark::DoNotOptimize(oracle::rk4_solve(p, g, Vector{4.0, -2.0}));
}
BENCHMARK(BM_Rk4Worked)->Arg(201)->Arg(1001)->Arg(5001)->Unit(benchmark::kMillisecond);

static void BM_ParseEval(benchmark::State& state) {
  const ScalarExpr e = parse("exp(-2*x) - 9*exp(2*x) + 3*sin(x)^2");
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(e, x));
    x += 1e-6;
  }
}
BENCHMARK(BM_ParseEval);

BENCHMARK_MAIN();
