#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "near.hpp"
#include "sseries/errors.hpp"
#include "sseries/matrix.hpp"

using namespace sseries;
using sseries::testing::max_diff;
using sseries::testing::rel_diff;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

// Scaled Taylor series in long double, squared back up.
Matrix taylor_exp(const Matrix& a) {
  const std::size_t n = a.rows();
  using LD = long double;
  int s = 0;
  while (norm_1(a) / std::ldexp(1.0, s) > 0.25) ++s;
  std::vector<LD> x(n * n), term(n * n), sum(n * n), tmp(n * n);
  for (std::size_t i = 0; i < n * n; ++i) x[i] = static_cast<LD>(a(i / n, i % n)) / std::ldexp(1.0L, s);
  auto mul = [n](const std::vector<LD>& p, const std::vector<LD>& q, std::vector<LD>& out) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        LD acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += p[i * n + k] * q[k * n + j];
        out[i * n + j] = acc;
      }
  };
  for (std::size_t i = 0; i < n * n; ++i) term[i] = sum[i] = (i / n == i % n) ? 1 : 0;
  for (int k = 1; k <= 30; ++k) {
    mul(term, x, tmp);
    for (std::size_t i = 0; i < n * n; ++i) {
      term[i] = tmp[i] / k;
      sum[i] += term[i];
    }
  }
  for (int k = 0; k < s; ++k) {
    mul(sum, sum, tmp);
    sum = tmp;
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n * n; ++i) out(i / n, i % n) = static_cast<double>(sum[i]);
  return out;
}

// exp(tH) for H = [[2,3],[-1,-2]] = V diag(1,-1) V^-1, V = [[3,1],[-1,-1]].
Matrix eigen_exp_worked_H(double t) {
  const double p = std::exp(t), m = std::exp(-t);
  // V^-1 = 1/2 [[1,1],[-1,-3]]
  return Matrix{{0.5 * (3 * p - m), 0.5 * (3 * p - 3 * m)}, {0.5 * (-p + m), 0.5 * (-p + 3 * m)}};
}

}  // namespace

TEST(Matrix, ConstructionRejectsBadShapesAndNonFinite) {
  EXPECT_THROW((Matrix(2, 2, {1.0, 2.0, 3.0})), ShapeError);
  EXPECT_THROW(Matrix(1, 1, {NAN}), ShapeError);
  EXPECT_THROW(Vector(std::vector<double>{}), ShapeError);
  EXPECT_THROW(Vector(std::vector<double>{INFINITY}), ShapeError);
  EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), ShapeError);
}

TEST(MatMul, IdentityTimesB) {
  const Matrix b{{1.5, -2.0}, {0.25, 7.0}};
  EXPECT_EQ(mat_mul(Matrix::identity(2), b), b);
}

TEST(MatMul, HTimesM0) {
  const Matrix h{{2, 3}, {-1, -2}};
  const Matrix m0{{3, 1}, {-1, -1}};
  EXPECT_EQ(mat_mul(h, m0), (Matrix{{3, -1}, {-1, 1}}));
}

TEST(MatMul, ZeroIsAbsorbing) {
  const Matrix b{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(mat_mul(Matrix(3, 2), b), Matrix(3, 3));
}

TEST(MatMul, ShapeMismatch) {
  EXPECT_THROW(mat_mul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
  EXPECT_THROW((Matrix(2, 3) * Vector{1.0, 2.0}), ShapeError);
}

TEST(MatInv, WorkedM0) {
  const Matrix inv = mat_inv(Matrix{{3, 1}, {-1, -1}});
  EXPECT_LT(max_diff(inv, Matrix{{0.5, 0.5}, {-0.5, -1.5}}), 1e-15);
}

TEST(MatInv, Identity) { EXPECT_EQ(mat_inv(Matrix::identity(3)), Matrix::identity(3)); }

TEST(MatInv, RankDeficientCarriesDet) {
  try {
    mat_inv(Matrix{{1, 2}, {2, 4}});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.det(), 0.0);
  }
}

TEST(MatInv, NonSquare) { EXPECT_THROW(mat_inv(Matrix(2, 3)), ShapeError); }

TEST(MatDet, WorkedWronskianIsMinusTwo) {
  for (double x : {-1.0, 0.0, 0.3, 1.0, 2.5}) {
    const Matrix m{{3 * std::exp(x), std::exp(-x)}, {-std::exp(x), -std::exp(-x)}};
    EXPECT_NEAR(mat_det(m), -2.0, 1e-13 * std::exp(2 * std::abs(x)));
  }
}

TEST(MatDet, IdentityAndDuplicateRows) {
  EXPECT_EQ(mat_det(Matrix::identity(4)), 1.0);
  EXPECT_EQ(mat_det(Matrix{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}}), 0.0);
}

TEST(MatExp, Zero) { EXPECT_EQ(mat_exp(Matrix(3, 3)), Matrix::identity(3)); }

TEST(MatExp, Diagonal) {
  const Matrix e = mat_exp(Matrix{{1, 0}, {0, 2}});
  EXPECT_LT(rel_diff(e(0, 0), std::exp(1.0)), 1e-14);
  EXPECT_LT(rel_diff(e(1, 1), std::exp(2.0)), 1e-14);
  EXPECT_EQ(e(0, 1), 0.0);
  EXPECT_EQ(e(1, 0), 0.0);
}

TEST(MatExp, EigenOracleForWorkedH) {
  const Matrix h{{2, 3}, {-1, -2}};
  for (double t : {0.1, 0.5, 1.0}) {
    const Matrix ref = eigen_exp_worked_H(t);
    EXPECT_LT(max_diff(mat_exp(t * h), ref) / max_abs(ref), 1e-13) << "t=" << t;
  }
}

TEST(MatExp, RelativeErrorAgainstExtendedPrecisionTaylor) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Matrix a = random_matrix(rng, n, -1.0, 1.0);
    const double target = 0.1 + 9.9 * (trial / 59.0);
    a = (target / norm_1(a)) * a;
    const Matrix ref = taylor_exp(a);
    EXPECT_LT(norm_1(mat_exp(a) - ref) / norm_1(ref), 1e-12) << "trial " << trial;
  }
}

TEST(MatExp, OverflowIsRangeError) {
  EXPECT_THROW(mat_exp(Matrix{{1000.0, 0.0}, {0.0, 1.0}}), RangeError);
}

TEST(MatrixProperties, InverseIsAnInverse) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Matrix a = random_matrix(rng, n, -3.0, 3.0);
    Matrix inv;
    try {
      inv = mat_inv(a);
    } catch (const SingularMatrixError&) {
      continue;
    }
    const double cond = norm_1(a) * norm_1(inv);
    EXPECT_LT(max_abs(mat_mul(a, inv) - Matrix::identity(n)), 1e-10 * std::max(1.0, cond));
  }
}

TEST(MatrixProperties, SemigroupLaw) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> st(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    Matrix a = random_matrix(rng, n, -1.0, 1.0);
    a = (5.0 * (trial + 1) / 100.0 / norm_1(a)) * a;
    const double s = st(rng), t = st(rng);
    const Matrix lhs = mat_exp((s + t) * a);
    const Matrix rhs = mat_mul(mat_exp(s * a), mat_exp(t * a));
    EXPECT_LT(max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)), 1e-9);
  }
}

TEST(MatrixProperties, AbelLiouville) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> td(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(rng, 1 + trial % 5, -1.0, 1.0);
    const double t = td(rng);
    EXPECT_LT(rel_diff(mat_det(mat_exp(t * a)), std::exp(t * trace(a))), 1e-9);
  }
}

TEST(MatrixProperties, DeterminantIsMultiplicative) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    // Diagonally dominant, hence well conditioned.
    Matrix a = random_matrix(rng, n, -0.3, 0.3) + Matrix::identity(n);
    Matrix b = random_matrix(rng, n, -0.3, 0.3) + 2.0 * Matrix::identity(n);
    EXPECT_LT(rel_diff(mat_det(mat_mul(a, b)), mat_det(a) * mat_det(b)), 1e-9);
  }
}
