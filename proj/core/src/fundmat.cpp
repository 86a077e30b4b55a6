#include "sseries/fundmat.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "sseries/errors.hpp"

namespace sseries {

namespace {

constexpr double kWronskianRelTol = 1e-10;
constexpr double kInverseTol = 1e-10;

[[noreturn]] void wronskian_fail(const Grid& grid, std::size_t k, const char* why) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "fundamental matrix: Wronskian vanishes at node %zu (x = %.17g): %s",
                k, grid[k], why);
  throw WronskianError(buf, k, grid[k]);
}

}  // namespace

FundamentalMatrixTable FundamentalMatrixTable::from_samples(Grid grid, std::vector<Matrix> M) {
  if (M.size() != grid.size()) throw ShapeError("fundamental matrix: one sample per node required");
  const std::size_t n = M.front().rows();
  for (const auto& m : M) {
    if (!m.is_square() || m.rows() != n) throw ShapeError("fundamental matrix: inconsistent shape");
  }

  std::vector<double> w(M.size());
  double w_max = 0.0;
  for (std::size_t k = 0; k < M.size(); ++k) {
    w[k] = mat_det(M[k]);
    w_max = std::max(w_max, std::abs(w[k]));
  }
  std::vector<Matrix> inv;
  inv.reserve(M.size());
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 0; k < M.size(); ++k) {
    if (!(std::abs(w[k]) > kWronskianRelTol * w_max)) wronskian_fail(grid, k, "columns are dependent");
    try {
      inv.push_back(mat_inv(M[k]));
    } catch (const SingularMatrixError&) {
      wronskian_fail(grid, k, "matrix is singular to working precision");
    }
    const double cond = norm_inf(M[k]) * norm_inf(inv.back());
    if (max_abs(M[k] * inv.back() - id) > kInverseTol * std::max(1.0, cond)) {
      wronskian_fail(grid, k, "matrix is too ill-conditioned to invert");
    }
  }
  return FundamentalMatrixTable{std::move(grid), std::move(M), std::move(inv), std::move(w)};
}

FundamentalMatrixTable fundamental_constant_H(const Matrix& H, const Grid& grid, double x_ref) {
  if (!H.is_square()) throw ShapeError("fundamental_constant_H: H must be square");
  if (!grid.contains(x_ref)) throw ShapeError("fundamental_constant_H: x_ref outside the grid");
  std::vector<Matrix> M;
  M.reserve(grid.size());
  for (double x : grid.nodes()) M.push_back(mat_exp((x - x_ref) * H));
  return FundamentalMatrixTable::from_samples(grid, std::move(M));
}

FundamentalMatrixTable fundamental_user(const std::vector<VectorExpr>& columns, const Grid& grid) {
  const std::size_t n = columns.size();
  if (n == 0) throw ShapeError("fundamental_user: no columns");
  for (const auto& col : columns) {
    if (col.size() != n) {
      throw ShapeError("fundamental_user: " + std::to_string(n) + " columns need " +
                       std::to_string(n) + " entries each");
    }
  }
  std::vector<Matrix> M;
  M.reserve(grid.size());
  for (double x : grid.nodes()) {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.set_column(j, eval_vector(columns[j], x));
    M.push_back(std::move(m));
  }
  return FundamentalMatrixTable::from_samples(grid, std::move(M));
}

FundamentalResidual check_fundamental(const FundamentalMatrixTable& table,
                                      std::span<const Matrix> H_nodes, double factor) {
  const Grid& g = table.grid;
  if (H_nodes.size() != g.size()) throw ShapeError("check_fundamental: H not sampled on the grid");
  const double h = g.step();

  FundamentalResidual r;
  double m_max = 0.0;
  double h_max = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    m_max = std::max(m_max, norm_inf(table.M[k]));
    h_max = std::max(h_max, norm_inf(H_nodes[k]));
  }
  for (std::size_t k = 1; k + 1 < g.size(); ++k) {
    Matrix d = (table.M[k + 1] - table.M[k - 1]);
    d *= 1.0 / (2.0 * h);
    const double res = norm_inf(d - H_nodes[k] * table.M[k]);
    if (res > r.max_residual) {
      r.max_residual = res;
      r.worst_node = k;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  r.tolerance = factor * m_max * h * h * std::max(1.0, h_max * h_max * h_max) +
                100.0 * eps * m_max / h;
  r.flagged = r.max_residual > r.tolerance;
  return r;
}

}  // namespace sseries
