#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sseries {

/// Operand shapes do not agree (dimension mismatch, non-square input, grid mismatch).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix rejected by the singularity test; carries the determinant that failed it.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double det)
      : std::runtime_error(what), det_(det) {}
  double det() const noexcept { return det_; }

 private:
  double det_;
};

class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected = {})
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

  /// Byte offset into the source text.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& what, std::size_t offset, std::string name)
      : ParseError(what, offset), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Expression evaluation left the real domain (log/sqrt of a negative,
/// division by zero, overflow). For matrix/vector evaluation the failing
/// entry is attached.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, double x, std::string subexpr,
              std::optional<std::size_t> row = std::nullopt,
              std::optional<std::size_t> col = std::nullopt)
      : std::runtime_error(what), x_(x), subexpr_(std::move(subexpr)), row_(row), col_(col) {}

  double x() const noexcept { return x_; }
  const std::string& subexpression() const noexcept { return subexpr_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }

 private:
  double x_;
  std::string subexpr_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
};

class WronskianError : public std::runtime_error {
 public:
  WronskianError(const std::string& what, std::size_t node, double x)
      : std::runtime_error(what), node_(node), x_(x) {}
  std::size_t node() const noexcept { return node_; }
  double x() const noexcept { return x_; }

 private:
  std::size_t node_;
  double x_;
};

/// Direct integration produced a non-finite state.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, std::size_t node)
      : std::runtime_error(what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace sseries
