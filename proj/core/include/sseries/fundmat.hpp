#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sseries/expr.hpp"
#include "sseries/grid.hpp"
#include "sseries/matrix.hpp"

namespace sseries {

/// Fundamental matrix M(x) of y' = H y sampled on a grid, with M^-1 and the
/// Wronskian det M at every node.
struct FundamentalMatrixTable {
  Grid grid;
  std::vector<Matrix> M;
  std::vector<Matrix> M_inv;
  std::vector<double> wronskian;

  std::size_t dim() const noexcept { return M.empty() ? 0 : M.front().rows(); }

  /// Builds inverses and Wronskians from node samples. Rejects with
  /// WronskianError when |W(x_k)| <= 1e-10 * max_k |W| at some node or
  /// M(x_k) fails the inverse singularity test.
  static FundamentalMatrixTable from_samples(Grid grid, std::vector<Matrix> M);
};

/// M(x_k) = exp((x_k - x_ref) H) for constant H, so M(x_ref) = I.
FundamentalMatrixTable fundamental_constant_H(const Matrix& H, const Grid& grid, double x_ref);

/// M with column j given by columns[j](x).
FundamentalMatrixTable fundamental_user(const std::vector<VectorExpr>& columns, const Grid& grid);

struct FundamentalResidual {
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t worst_node = 0;
  bool flagged = false;
};

/// Checks M' = H M by central differences at interior nodes:
/// max_k |(M_{k+1} - M_{k-1}) / 2h - H_k M_k|_inf.
///
/// Flags the table when the residual exceeds
/// factor * max|M| * h^2 * max(1, max|H|^3) plus a rounding allowance.
FundamentalResidual check_fundamental(const FundamentalMatrixTable& table,
                                      std::span<const Matrix> H_nodes, double factor = 5.0);

}  // namespace sseries
