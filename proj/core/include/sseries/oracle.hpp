#pragma once

#include <span>
#include <vector>

#include "sseries/grid.hpp"
#include "sseries/matrix.hpp"
#include "sseries/problem.hpp"

namespace sseries {

/// Independent checks on series output. Shares only the matrix and
/// expression layers with the series machinery.
namespace oracle {

enum class Method { RK4 };

struct OracleSolution {
  Grid grid;
  std::vector<Vector> values;
  Method method = Method::RK4;
};

/// Classical fixed-step RK4 on y' = A(x) y + F(x), marching right from x0 to b
/// and left from x0 to a with step equal to the grid spacing. A is the
/// problem's whole matrix or H + Z. Throws BlowUpError on a non-finite state.
OracleSolution rk4_solve(const Problem& p, const Grid& grid, const Vector& y_at_x0);

/// max over interior nodes of |(y_{k+1} - y_{k-1}) / 2h - A(x_k) y_k - F(x_k)|_inf.
double residual(std::span<const Vector> values, const Problem& p, const Grid& grid);

struct Comparison {
  double sup_diff = 0.0;
  std::vector<double> per_node_diff;
};

/// Nodewise max-norm difference. Throws ShapeError on length or dimension mismatch.
Comparison compare(std::span<const Vector> a, std::span<const Vector> b);

}  // namespace oracle
}  // namespace sseries
