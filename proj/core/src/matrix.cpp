#include "sseries/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "sseries/errors.hpp"

namespace sseries {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (double v : xs) {
    if (!std::isfinite(v)) throw ShapeError(std::string(what) + ": non-finite entry");
  }
}

std::string shape_string(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square() || a.rows() == 0) {
    throw ShapeError(std::string(op) + ": expected a non-empty square matrix, got " +
                     shape_string(a));
  }
}

// In-place LU factorisation with partial pivoting (Doolittle, unit lower).
struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

Lu lu_factor(const Matrix& a) {
  const std::size_t n = a.rows();
  Lu f{a, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  Matrix& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = m(i, k) / m(k, k);
      m(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

double lu_det(const Lu& f) {
  if (f.singular) return 0.0;
  double d = f.sign;
  for (std::size_t i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

Matrix lu_solve(const Lu& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  const Matrix& m = f.lu;
  Matrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(f.perm[i], c);
      for (std::size_t j = 0; j < i; ++j) s -= m(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x(j, c);
      x(ii, c) = s / m(ii, ii);
    }
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw ShapeError("Vector: empty");
  require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> entries) : Vector(std::vector<double>(entries)) {}

Vector& Vector::operator+=(const Vector& rhs) {
  if (rhs.size() != size()) throw ShapeError("Vector +: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  if (rhs.size() != size()) throw ShapeError("Vector -: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double s, Vector v) { return v *= s; }

double norm_inf(const Vector& v) noexcept {
  double m = 0.0;
  for (double x : v.data()) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Vector& v) noexcept {
  return std::all_of(v.data().begin(), v.data().end(), [](double x) { return std::isfinite(x); });
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("Matrix: dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw ShapeError("Matrix: " + std::to_string(data_.size()) + " entries for a " +
                     std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (rows_ == 0 || cols_ == 0) throw ShapeError("Matrix: dimensions must be positive");
  require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw ShapeError("Matrix::set_column: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.rows_ != rows_ || rhs.cols_ != cols_) {
    throw ShapeError("Matrix +: " + shape_string(*this) + " vs " + shape_string(rhs));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.rows_ != rows_ || rhs.cols_ != cols_) {
    throw ShapeError("Matrix -: " + shape_string(*this) + " vs " + shape_string(rhs));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double s, Matrix m) { return m *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) {
    throw ShapeError("Matrix*Vector: " + shape_string(a) + " times size " +
                     std::to_string(v.size()));
  }
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double norm_inf(const Matrix& m) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_1(const Matrix& m) noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs(const Matrix& m) noexcept {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double trace(const Matrix& m) {
  require_square(m, "trace");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

bool all_finite(const Matrix& m) noexcept {
  return std::all_of(m.data().begin(), m.data().end(), [](double x) { return std::isfinite(x); });
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + shape_string(a) + " times " + shape_string(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double mat_det(const Matrix& a) {
  require_square(a, "mat_det");
  return lu_det(lu_factor(a));
}

Matrix mat_inv(const Matrix& a) {
  require_square(a, "mat_inv");
  const Lu f = lu_factor(a);
  const double det = lu_det(f);
  const double scale = std::pow(max_abs(a), static_cast<double>(a.rows()));
  if (f.singular || !(std::abs(det) >= 1e-12 * scale) || scale == 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mat_inv: matrix is singular to working precision (det = %.6g)",
                  det);
    throw SingularMatrixError(buf, det);
  }
  return lu_solve(f, Matrix::identity(a.rows()));
}

Matrix solve(const Matrix& a, const Matrix& b) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw ShapeError("solve: right-hand side has wrong row count");
  const Lu f = lu_factor(a);
  if (f.singular) throw SingularMatrixError("solve: zero pivot", 0.0);
  return lu_solve(f, b);
}

Matrix mat_exp(const Matrix& a) {
  require_square(a, "mat_exp");
  const std::size_t n = a.rows();
  const double norm = norm_1(a);
  if (!std::isfinite(norm)) throw RangeError("mat_exp: non-finite argument");
  if (norm == 0.0) return Matrix::identity(n);

  int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm))));
  if (s > 1000) throw RangeError("mat_exp: argument norm too large");

  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};

  const Matrix x = std::ldexp(1.0, -s) * a;
  const Matrix id = Matrix::identity(n);
  const Matrix x2 = x * x;
  const Matrix x4 = x2 * x2;
  const Matrix x6 = x4 * x2;

  const Matrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 +
                         b[3] * x2 + b[1] * id;
  const Matrix u = x * u_inner;
  const Matrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 +
                   b[2] * x2 + b[0] * id;

  Matrix r = solve(v - u, v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  if (!all_finite(r)) throw RangeError("mat_exp: result overflows");
  return r;
}

}  // namespace sseries
