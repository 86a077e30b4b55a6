#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sseries {

/// Dense real vector.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : data_(n, 0.0) {}
  /// Throws ShapeError on empty input and on non-finite entries.
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  std::size_t size() const noexcept { return data_.size(); }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(double s) noexcept;

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);

/// Max-abs norm.
double norm_inf(const Vector& v) noexcept;
bool all_finite(const Vector& v) noexcept;

/// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(std::size_t rows, std::size_t cols);
  /// Throws ShapeError when entries.size() != rows*cols or any entry is non-finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s) noexcept;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);

/// Maximum absolute row sum.
double norm_inf(const Matrix& m) noexcept;
/// Maximum absolute column sum.
double norm_1(const Matrix& m) noexcept;
double max_abs(const Matrix& m) noexcept;
double trace(const Matrix& m);
bool all_finite(const Matrix& m) noexcept;

/// Matrix product. Throws ShapeError when a.cols() != b.rows().
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// Determinant by LU with partial pivoting; 0.0 for an exactly singular matrix.
double mat_det(const Matrix& a);

/// Inverse by LU with partial pivoting.
///
/// Rejects with SingularMatrixError when |det(a)| < 1e-12 * (max |a_ij|)^n.
Matrix mat_inv(const Matrix& a);

/// Solves a x = b for square a (LU, partial pivoting). Throws
/// SingularMatrixError on a zero pivot; no conditioning threshold.
Matrix solve(const Matrix& a, const Matrix& b);

/// Matrix exponential by scaling and squaring around a degree-13 Pade core.
///
/// The argument is scaled by 2^-s with s = max(0, ceil(log2 |a|_1)) so the
/// approximant sees a norm of at most one, then squared s times.
/// Throws RangeError if the norm is non-finite or the result overflows.
Matrix mat_exp(const Matrix& a);

}  // namespace sseries
