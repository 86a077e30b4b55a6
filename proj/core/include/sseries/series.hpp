#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sseries/expr.hpp"
#include "sseries/fundmat.hpp"
#include "sseries/grid.hpp"
#include "sseries/matrix.hpp"
#include "sseries/problem.hpp"

namespace sseries {

/// A vector-valued function sampled at every node of a grid.
struct GridVectorFunction {
  Grid grid;
  std::vector<Vector> values;

  /// max_k |values[k]|_inf
  double sup_norm() const noexcept;
};

enum class QuadratureRule {
  /// Cumulative composite trapezoid, O(h^2).
  Trapezoid,
  /// Trapezoid with the Euler-Maclaurin endpoint term -h^2/12 (f'(x) - f'(x0)),
  /// derivatives from second-order differences; O(h^4).
  EndCorrectedTrapezoid,
};

struct SeriesOptions {
  std::size_t max_terms = 50;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t grid_nodes = 1001;
  QuadratureRule quadrature = QuadratureRule::EndCorrectedTrapezoid;

  /// Throws std::invalid_argument for non-positive tolerances, zero
  /// max_terms, or an even / too small node count.
  void check() const;
};

enum class StopReason { ToleranceMet, MaxTermsReached, Diverging };

std::string_view to_string(StopReason r) noexcept;

struct SeriesSolution {
  std::vector<GridVectorFunction> terms;
  GridVectorFunction partial_sum;
  std::vector<double> term_sup_norms;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxTermsReached;
  double residual_sup = 0.0;
};

/// Antiderivative of node samples vanishing at x0 (which must be a node).
/// Nodes left of x0 receive the signed integral from x0.
std::vector<Vector> cum_integrate(std::span<const Vector> samples, const Grid& grid, double x0,
                                  QuadratureRule rule = QuadratureRule::EndCorrectedTrapezoid);

/// Term 0 of the homogeneous series: M(x_k) c.
GridVectorFunction term0_homogeneous(const FundamentalMatrixTable& table, const Vector& c);

/// Term 0 with forcing: M(x_k) [c + int_{x0}^{x_k} M^-1(t) F(t) dt].
GridVectorFunction term0_nonhomogeneous(
    const FundamentalMatrixTable& table, const VectorExpr& F, double x0, const Vector& c,
    QuadratureRule rule = QuadratureRule::EndCorrectedTrapezoid);

/// Variation-of-parameters step: M(x_k) int_{x0}^{x_k} M^-1(t) Z(t) prev(t) dt.
/// The result is exactly zero at x0.
GridVectorFunction next_term(const FundamentalMatrixTable& table, const MatrixExpr& Z,
                             const GridVectorFunction& prev, double x0,
                             QuadratureRule rule = QuadratureRule::EndCorrectedTrapezoid);

/// Same step with Z already sampled at the grid nodes.
GridVectorFunction next_term(const FundamentalMatrixTable& table, std::span<const Matrix> Z_nodes,
                             const GridVectorFunction& prev, double x0,
                             QuadratureRule rule = QuadratureRule::EndCorrectedTrapezoid);

/// M^-1(x_k) Z(x_k) M(x_k) at every node: the kernel that drives the
/// coefficient recursion.
std::vector<Matrix> transformed_remainder(const FundamentalMatrixTable& table, const MatrixExpr& Z);

/// Nodewise sum of terms[0..l], accumulated left to right by term index.
GridVectorFunction partial_sum(std::span<const GridVectorFunction> terms, std::size_t l);

/// Generates terms until the newest one is small against the running sum,
/// the term budget runs out, or the term norms grow for three consecutive
/// steps with a last ratio above 2.
///
/// The problem must already be split into H + Z; `table` must be a
/// fundamental matrix of y' = H y on a grid whose size matches
/// opts.grid_nodes. A term that is identically zero ends the series and is
/// not stored.
SeriesSolution solve_series(const Problem& p, const FundamentalMatrixTable& table,
                            const SeriesOptions& opts);

}  // namespace sseries
