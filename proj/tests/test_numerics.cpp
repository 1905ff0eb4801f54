#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "delayh2/error.hpp"
#include "delayh2/numerics.hpp"
#include "support/fixtures.hpp"

namespace delayh2 {
namespace {

using testing::random_matrix;
using testing::random_stable;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected delayh2::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Sqrtm, Identity) {
  const SpdRoot r = sqrtm_spd(Matrix::Identity(3, 3));
  EXPECT_LT((r.sqrt - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LT((r.inv_sqrt - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(Sqrtm, Diagonal) {
  Matrix m = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  const SpdRoot r = sqrtm_spd(m);
  Matrix expect = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  EXPECT_LT((r.sqrt - expect).norm(), 1e-14);
  EXPECT_NEAR(r.inv_sqrt(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(r.inv_sqrt(1, 1), 1.0 / 3.0, 1e-14);
}

TEST(Sqrtm, RandomSpdSquaresBack) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = random_matrix(rng, 5, 5);
    const Matrix m = g * g.transpose() + 0.1 * Matrix::Identity(5, 5);
    const SpdRoot r = sqrtm_spd(m);
    EXPECT_LT((r.sqrt * r.sqrt - m).norm(), 1e-10 * m.norm());
    EXPECT_LT((r.sqrt * r.inv_sqrt - Matrix::Identity(5, 5)).norm(), 1e-10);
    EXPECT_LT((r.sqrt - r.sqrt.transpose()).norm(), 1e-14);
  }
}

TEST(Sqrtm, RejectsIndefiniteAndAsymmetric) {
  Matrix indef = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  EXPECT_EQ(code_of([&] { sqrtm_spd(indef); }), ErrorCode::kNotPositiveDefinite);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_EQ(code_of([&] { sqrtm_spd(asym); }), ErrorCode::kNotSymmetric);
}

TEST(Dlyap, Scalar) {
  Matrix a(1, 1), q(1, 1);
  a << 0.5;
  q << 1.0;
  EXPECT_NEAR(dlyap(a, q)(0, 0), 4.0 / 3.0, 1e-14);
}

TEST(Dlyap, ZeroDynamicsReturnsQ) {
  std::mt19937_64 rng(3);
  const Matrix g = random_matrix(rng, 4, 4);
  const Matrix q = g * g.transpose();
  EXPECT_LT((dlyap(Matrix::Zero(4, 4), q) - q).norm(), 1e-14);
}

TEST(Dlyap, MatchesTruncatedSeries) {
  std::mt19937_64 rng(11);
  const Matrix a = random_stable(rng, 4, 0.8);
  const Matrix g = random_matrix(rng, 4, 2);
  const Matrix q = g * g.transpose();
  Matrix sum = Matrix::Zero(4, 4);
  Matrix pow = Matrix::Identity(4, 4);
  for (int k = 0; k < 400; ++k) {
    sum += pow * q * pow.transpose();
    pow = a * pow;
  }
  const Matrix w = dlyap(a, q);
  EXPECT_LT((w - sum).norm(), 1e-10 * sum.norm());
  EXPECT_LT((w - a * w * a.transpose() - q).norm(), 1e-12 * w.norm());
}

TEST(Stein, GeneralRectangular) {
  std::mt19937_64 rng(5);
  const Matrix a = random_stable(rng, 3, 0.9);
  const Matrix b = random_stable(rng, 5, 0.7);
  const Matrix q = random_matrix(rng, 3, 5);
  const Matrix w = solve_stein(a, b, q);
  EXPECT_LT((w - a * w * b.transpose() - q).norm(), 1e-12 * std::max(1.0, w.norm()));
}

TEST(Stein, EmptyOperands) {
  const Matrix w = solve_stein(Matrix(0, 0), Matrix::Zero(2, 2), Matrix(0, 2));
  EXPECT_EQ(w.rows(), 0);
  EXPECT_EQ(w.cols(), 2);
}

TEST(SpectralRadius, KnownValues) {
  Matrix rot(2, 2);
  rot << 0, -0.5, 0.5, 0;
  EXPECT_NEAR(spectral_radius(rot), 0.5, 1e-15);
  Matrix jordan(2, 2);
  jordan << 0.9, 100, 0, 0.9;
  EXPECT_NEAR(spectral_radius(jordan), 0.9, 1e-12);
  EXPECT_TRUE(is_stable(jordan));
  EXPECT_FALSE(is_stable(Matrix::Identity(2, 2)));
  EXPECT_DOUBLE_EQ(spectral_radius(Matrix(0, 0)), 0.0);
}

TEST(SolveSpd, SolvesAndRejectsSingular) {
  std::mt19937_64 rng(9);
  const Matrix g = random_matrix(rng, 6, 6);
  const Matrix h = g * g.transpose() + Matrix::Identity(6, 6);
  const Vector x = random_matrix(rng, 6, 1);
  const Vector v = solve_spd(h, h * x);
  EXPECT_LT((v - x).norm(), 1e-10 * x.norm());

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  EXPECT_EQ(code_of([&] { solve_spd(singular, Vector::Ones(2)); }),
            ErrorCode::kSingularHessian);
}

TEST(MinEigenvalue, Symmetric) {
  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  EXPECT_NEAR(min_eigenvalue_sym(m), 1.0, 1e-14);
  EXPECT_TRUE(std::isinf(min_eigenvalue_sym(Matrix(0, 0))));
}

TEST(CheckFinite, FlagsNan) {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { check_finite(m, "m"); }), ErrorCode::kNotFinite);
}


TEST(SpectralRadius, DiagonalAndChain) {
  Matrix d = Eigen::Vector2d(0.5, -0.9).asDiagonal();
  EXPECT_NEAR(spectral_radius(d), 0.9, 1e-15);
  EXPECT_EQ(spectral_radius(Matrix::Zero(3, 3)), 0.0);
  EXPECT_LT(spectral_radius(testing::chain_plant().A()), 1.0);
}

TEST(SolveSpd, SmallCases) {
  const Vector g = Eigen::Vector3d(1.0, -2.0, 0.5);
  EXPECT_LT((solve_spd(Matrix::Identity(3, 3), g) - g).norm(), 1e-15);
  Matrix h = Eigen::Vector2d(2.0, 4.0).asDiagonal();
  EXPECT_LT((solve_spd(h, Eigen::Vector2d(2.0, 4.0)) - Eigen::Vector2d(1.0, 1.0)).norm(), 1e-15);
}

TEST(Dlyap, IdentityRightHandSide) {
  std::mt19937_64 rng(17);
  const Matrix a = random_stable(rng, 3, 0.7);
  Matrix sum = Matrix::Zero(3, 3);
  Matrix pow = Matrix::Identity(3, 3);
  for (int i = 0; i <= 200; ++i) {
    sum += pow * pow.transpose();
    pow = a * pow;
  }
  EXPECT_LT((dlyap(a, Matrix::Identity(3, 3)) - sum).norm(), 1e-8);
}

}  // namespace
}  // namespace delayh2
