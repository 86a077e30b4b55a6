#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sseries/expr.hpp"
#include "sseries/grid.hpp"
#include "sseries/matrix.hpp"

namespace sseries {

struct Interval {
  double a;
  double b;
};

/// Coefficient given as a single matrix A(x), not yet split.
struct WholeCoefficient {
  MatrixExpr A;
};

/// A(x) = H(x) + Z(x), where y' = H y is the exactly solvable part.
struct SplitCoefficient {
  MatrixExpr H;
  MatrixExpr Z;
};

/// y' = A(x) y + F(x) on [a, b], with base point x0 and constant vector c.
///
/// The system is homogeneous exactly when no forcing is given.
class Problem {
 public:
  using Coefficient = std::variant<WholeCoefficient, SplitCoefficient>;

  /// Throws ShapeError if dimensions disagree or a >= b. x0 outside [a, b]
  /// is accepted here and reported by validate().
  Problem(Coefficient coeff, std::optional<VectorExpr> forcing, Interval interval, double x0,
          Vector c);

  std::size_t dim() const noexcept { return n_; }
  const Coefficient& coefficient() const noexcept { return coeff_; }
  bool is_split() const noexcept { return std::holds_alternative<SplitCoefficient>(coeff_); }
  /// Throws std::logic_error when the coefficient has not been split.
  const SplitCoefficient& split() const;
  /// A(x), either as given or rebuilt as H + Z.
  MatrixExpr system_matrix() const;

  const std::optional<VectorExpr>& forcing() const noexcept { return forcing_; }
  bool homogeneous() const noexcept { return !forcing_.has_value(); }
  Interval interval() const noexcept { return interval_; }
  double x0() const noexcept { return x0_; }
  const Vector& c() const noexcept { return c_; }

  Problem with_coefficient(Coefficient coeff) const;

 private:
  std::size_t n_;
  Coefficient coeff_;
  std::optional<VectorExpr> forcing_;
  Interval interval_;
  double x0_;
  Vector c_;
};

// ---------------------------------------------------------------------------
// splitting

/// Caller supplies both parts; they are checked against A on the grid.
struct UserGiven {
  MatrixExpr H;
  MatrixExpr Z;
};
/// H_ij = mean of A_ij over [a, b] (composite Simpson on the grid).
struct ConstantMean {};
/// H = A(point).
struct ConstantAtPoint {
  double point;
};
/// H = diagonal part of A (may depend on x), Z = off-diagonal part.
struct DiagonalOfA {};

using SplitStrategy = std::variant<UserGiven, ConstantMean, ConstantAtPoint, DiagonalOfA>;

/// Splits A into H + Z. The result is verified at every grid node:
/// |H + Z - A| <= 1e-12 * max(1, |A|) entrywise, else ShapeError.
/// Throws ShapeError for a non-square split, or when ConstantAtPoint names
/// a point outside the grid interval.
SplitCoefficient split_coefficient(const MatrixExpr& A, const SplitStrategy& strategy,
                                   const Grid& grid);

/// Convenience: the same problem with its coefficient replaced by the split.
Problem apply_split(const Problem& p, const SplitStrategy& strategy, const Grid& grid);

// ---------------------------------------------------------------------------
// n-th order reduction

/// y^(n) + a_1(x) y^(n-1) + ... + a_n(x) y = F(x), with initial values
/// (y, y', ..., y^(n-1)) at x0 stored in `initial`.
struct CompanionSpec {
  std::size_t order;
  std::vector<ScalarExpr> coefficients;  // a_1 ... a_n
  ScalarExpr forcing;
  Interval interval;
  double x0;
  Vector initial;
};

/// First-order system for y_k = y^(k-1): ones on the superdiagonal, last row
/// (-a_n, ..., -a_1), forcing (0, ..., 0, F).
Problem companion_reduce(const CompanionSpec& spec);

// ---------------------------------------------------------------------------
// validation

struct Finding {
  enum class Severity { Error, Info };
  enum class Kind {
    BaseOutOfInterval,
    BaseNotOnGrid,
    GridIntervalMismatch,
    NonFiniteCoefficient,
    NonFiniteForcing,
    SplitMismatch,
    SingularRemainder,
  };

  Severity severity;
  Kind kind;
  std::string message;
  std::optional<double> x;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
};

struct ValidationReport {
  std::vector<Finding> findings;

  /// No Error-severity findings.
  bool ok() const noexcept;
  bool empty() const noexcept { return findings.empty(); }
  std::vector<Finding> errors() const;
};

/// Reports problems without throwing: non-finite A/H/Z/F samples, H+Z != A,
/// x0 outside [a, b] or off the grid, grid not matching the interval.
/// A singular Z is reported once, as Info.
ValidationReport validate(const Problem& p, const Grid& grid);

}  // namespace sseries
