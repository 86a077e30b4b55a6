#include "sseries/oracle.hpp"

#include <algorithm>
#include <string>

#include "sseries/errors.hpp"

namespace sseries::oracle {

namespace {

class Rhs {
 public:
  explicit Rhs(const Problem& p) : a_(p.system_matrix()), f_(p.forcing()) {}

  Vector operator()(double x, const Vector& y) const {
    Vector dy = eval_matrix(a_, x) * y;
    if (f_) dy += eval_vector(*f_, x);
    return dy;
  }

 private:
  MatrixExpr a_;
  std::optional<VectorExpr> f_;
};

Vector rk4_step(const Rhs& f, double x, const Vector& y, double h) {
  const Vector k1 = f(x, y);
  const Vector k2 = f(x + 0.5 * h, y + (0.5 * h) * k1);
  const Vector k3 = f(x + 0.5 * h, y + (0.5 * h) * k2);
  const Vector k4 = f(x + h, y + h * k3);
  Vector out = y;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

OracleSolution rk4_solve(const Problem& p, const Grid& grid, const Vector& y_at_x0) {
  if (y_at_x0.size() != p.dim()) throw ShapeError("rk4_solve: initial vector has wrong size");
  const auto k0 = grid.index_of(p.x0());
  if (!k0) throw ShapeError("rk4_solve: x0 is not a grid node");

  const Rhs rhs(p);
  std::vector<Vector> y(grid.size());
  y[*k0] = y_at_x0;
  auto check = [&](std::size_t k) {
    if (!all_finite(y[k])) {
      throw BlowUpError("rk4_solve: non-finite state at node " + std::to_string(k), k);
    }
  };
  for (std::size_t k = *k0; k + 1 < grid.size(); ++k) {
    y[k + 1] = rk4_step(rhs, grid[k], y[k], grid[k + 1] - grid[k]);
    check(k + 1);
  }
  for (std::size_t k = *k0; k > 0; --k) {
    y[k - 1] = rk4_step(rhs, grid[k], y[k], grid[k - 1] - grid[k]);
    check(k - 1);
  }
  return OracleSolution{grid, std::move(y), Method::RK4};
}

double residual(std::span<const Vector> values, const Problem& p, const Grid& grid) {
  if (values.size() != grid.size()) throw ShapeError("residual: values not sampled on the grid");
  const MatrixExpr a = p.system_matrix();
  const auto& f = p.forcing();
  const double h = grid.step();
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    Vector r = values[k + 1] - values[k - 1];
    r *= 1.0 / (2.0 * h);
    r -= eval_matrix(a, grid[k]) * values[k];
    if (f) r -= eval_vector(*f, grid[k]);
    worst = std::max(worst, norm_inf(r));
  }
  return worst;
}

Comparison compare(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.size() != b.size()) throw ShapeError("compare: grids differ in length");
  Comparison out;
  out.per_node_diff.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) throw ShapeError("compare: dimension mismatch");
    out.per_node_diff[k] = norm_inf(a[k] - b[k]);
    out.sup_diff = std::max(out.sup_diff, out.per_node_diff[k]);
  }
  return out;
}

}  // namespace sseries::oracle
