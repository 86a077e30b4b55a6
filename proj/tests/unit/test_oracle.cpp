#include <gtest/gtest.h>

#include <cmath>

#include "near.hpp"
#include "worked_example.hpp"
#include "sseries/errors.hpp"
#include "sseries/oracle.hpp"

using namespace sseries;
using namespace sseries::testing;

namespace {

Problem scalar(const char* a, std::optional<const char*> f, Interval iv = {0, 1}, double x0 = 0) {
  std::optional<VectorExpr> forcing;
  if (f) forcing = VectorExpr::parse({*f});
  return Problem(WholeCoefficient{MatrixExpr::parse({{a}})}, forcing, iv, x0, Vector{0.0});
}

double exp_endpoint_error(std::size_t n) {
  const Grid g(0.0, 1.0, n);
  return std::abs(oracle::rk4_solve(scalar("1", std::nullopt), g, Vector{1.0}).values.back()[0] - std::exp(1.0));
}

}  // namespace

TEST(Rk4, Exponential) { EXPECT_LT(exp_endpoint_error(1001), 1e-10); }

TEST(Rk4, WorkedExampleMatchesClosedForm) {
  const Grid g(0.0, 1.0, 1001);
  const auto sol = oracle::rk4_solve(worked_problem(Vector{1, 1}), g, Vector{4, -2});
  EXPECT_EQ(sol.method, oracle::Method::RK4);
  EXPECT_LT(max_diff(sol.values.back(), worked_closed_form(1.0, 0.5, 0.5)), 1e-8);
}

TEST(Rk4, ZeroCoefficientIsConstant) {
  const Grid g(-1.0, 1.0, 21);
  const Problem p(WholeCoefficient{MatrixExpr(3)}, std::nullopt, {-1, 1}, 0, Vector(3));
  for (const auto& v : oracle::rk4_solve(p, g, Vector{1, -2, 3}).values) EXPECT_EQ(v, (Vector{1, -2, 3}));
}

TEST(Rk4, MarchesLeftFromInteriorBase) {
  const Grid g(-1.0, 1.0, 201);
  const auto sol = oracle::rk4_solve(scalar("-2", std::nullopt, {-1, 1}, 0.5), g, Vector{1.0});
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_LT(rel_diff(sol.values[k][0], std::exp(-2.0 * (g[k] - 0.5))), 1e-8) << g[k];
  }
}

TEST(Rk4, ForcedScalar) {
  // y' = y + 1, y(0) = 0  ->  y = e^x - 1.
  const Grid g(0.0, 1.0, 101);
  const auto sol = oracle::rk4_solve(scalar("1", "1"), g, Vector{0.0});
  EXPECT_NEAR(sol.values.back()[0], std::exp(1.0) - 1.0, 1e-9);
}

TEST(Rk4, BlowUpNamesNode) {
  const Grid g(0.0, 1.0, 11);
  EXPECT_THROW(oracle::rk4_solve(scalar("1e300", std::nullopt), g, Vector{1.0}), BlowUpError);
}

TEST(Rk4, FourthOrder) { EXPECT_GE(exp_endpoint_error(11) / exp_endpoint_error(21), 14.0); }

TEST(Residual, ClosedFormIsSecondOrder) {
  for (std::size_t n : {101u, 201u, 401u}) {
    const Grid g(0.0, 1.0, n);
    std::vector<Vector> y;
    for (double x : g.nodes()) y.push_back(worked_closed_form(x, 0.5, 0.5));
    // Here y = (e^x + 3e^3x, -e^x - e^3x), so |y'''| <= 27 |y| componentwise.
    double ymax = 0.0;
    for (const auto& v : y) ymax = std::max(ymax, norm_inf(v));
    const double h = g.step();
    EXPECT_LE(oracle::residual(y, worked_problem(Vector{1, 1}), g), 27.0 * ymax / 6.0 * h * h);
  }
}

TEST(Residual, ZeroSolution) {
  const Grid g(0.0, 1.0, 11);
  EXPECT_EQ(oracle::residual(std::vector<Vector>(g.size(), Vector(2)), worked_problem(Vector{0, 0}), g), 0.0);
}

TEST(Residual, DeliberateViolation) {
  const Grid g(0.0, 1.0, 11);
  EXPECT_EQ(oracle::residual(std::vector<Vector>(g.size(), Vector{1.0}), scalar("0", "1"), g), 1.0);
}

TEST(Compare, Examples) {
  const std::vector<Vector> a{Vector{1, 2}, Vector{3, 4}, Vector{-1, 0.5}};
  EXPECT_EQ(oracle::compare(a, a).sup_diff, 0.0);

  auto b = a;
  b[1][1] += 1e-3;
  const auto c = oracle::compare(a, b);
  EXPECT_NEAR(c.sup_diff, 1e-3, 1e-15);
  ASSERT_EQ(c.per_node_diff.size(), 3u);
  EXPECT_EQ(c.per_node_diff[0], 0.0);
  EXPECT_EQ(c.per_node_diff[2], 0.0);

  EXPECT_THROW(oracle::compare(a, std::vector<Vector>(2, Vector(2))), ShapeError);
  EXPECT_THROW(oracle::compare(a, std::vector<Vector>(3, Vector(3))), ShapeError);
}
