#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sseries/matrix.hpp"

namespace sseries {

/// Immutable expression tree in the single variable x.
///
/// Grammar (whitespace insignificant):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?
///     primary := number | 'x' | func '(' expr ')' | '(' expr ')'
///     func    := exp | sin | cos | log | sqrt
///
/// so '^' binds tighter than unary minus and is right-associative, and the
/// four arithmetic operators are left-associative. Nodes are shared, so
/// copying a ScalarExpr is cheap and thread-safe.
class ScalarExpr {
 public:
  enum class Kind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Function };
  enum class Func { Exp, Sin, Cos, Log, Sqrt };

  /// The constant 0.
  ScalarExpr();

  static ScalarExpr constant(double value);
  static ScalarExpr variable();
  static ScalarExpr negate(ScalarExpr operand);
  static ScalarExpr binary(Kind op, ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr function(Func f, ScalarExpr operand);

  Kind kind() const noexcept;
  /// Only meaningful for Kind::Constant.
  double value() const noexcept;
  /// Only meaningful for Kind::Function.
  Func func() const noexcept;
  /// Operand of Negate/Function, left operand of a binary node.
  ScalarExpr lhs() const;
  ScalarExpr rhs() const;

  /// True when the tree does not reference x.
  bool is_constant() const noexcept;
  /// True for the literal constant 0 (not for expressions that merely evaluate to 0).
  bool is_zero_literal() const noexcept;

  /// Minimal-parenthesis rendering; parse(to_string()) rebuilds the same tree.
  std::string to_string() const;

  friend bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b) noexcept;

 private:
  struct Node;
  explicit ScalarExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

ScalarExpr operator+(ScalarExpr a, ScalarExpr b);
ScalarExpr operator-(ScalarExpr a, ScalarExpr b);
ScalarExpr operator*(ScalarExpr a, ScalarExpr b);
ScalarExpr operator-(ScalarExpr a);

/// Negation that folds literal constants and double negation, so that
/// negating "-1" yields "1" rather than "--1".
ScalarExpr negated(const ScalarExpr& e);

/// Throws ParseError (with byte offset and expected-token set) or
/// UnknownIdentifierError.
ScalarExpr parse(std::string_view source);

/// Throws DomainError for log/sqrt outside their domain, division by zero,
/// and any other non-finite intermediate.
double eval(const ScalarExpr& e, double x);

/// n x n grid of expressions.
class MatrixExpr {
 public:
  MatrixExpr() = default;
  /// All-zero n x n.
  explicit MatrixExpr(std::size_t n);
  /// Row-major; throws ShapeError unless entries.size() == n*n.
  MatrixExpr(std::size_t n, std::vector<ScalarExpr> entries);

  static MatrixExpr parse(const std::vector<std::vector<std::string>>& rows);
  static MatrixExpr constant(const Matrix& m);

  std::size_t size() const noexcept { return n_; }
  const ScalarExpr& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  ScalarExpr& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }

  bool is_constant() const noexcept;
  bool is_zero_literal() const noexcept;
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t n_ = 0;
  std::vector<ScalarExpr> entries_;
};

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b);

class VectorExpr {
 public:
  VectorExpr() = default;
  explicit VectorExpr(std::vector<ScalarExpr> entries);

  static VectorExpr parse(const std::vector<std::string>& entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const ScalarExpr& operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::vector<std::string> to_strings() const;

 private:
  std::vector<ScalarExpr> entries_;
};

/// Entrywise evaluation; a DomainError is re-raised with its (row, col).
Matrix eval_matrix(const MatrixExpr& m, double x);
Vector eval_vector(const VectorExpr& v, double x);

}  // namespace sseries
