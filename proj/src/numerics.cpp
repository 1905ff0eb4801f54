#include "delayh2/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace delayh2 {

void check_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) {
    fail(ErrorCode::kNotFinite, std::string(name) + " has non-finite entries");
  }
}

double spectral_radius(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::kDimensionMismatch,
          "spectral_radius: matrix is not square");
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stable(const Matrix& a, const Tolerances& tol) {
  return spectral_radius(a) < 1.0 - tol.stability_margin;
}

namespace {

void check_symmetric(const Matrix& m, double tol, const char* what) {
  require(m.rows() == m.cols(), ErrorCode::kDimensionMismatch,
          std::string(what) + ": matrix is not square");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.transpose()).norm() > tol * scale) {
    fail(ErrorCode::kNotSymmetric, std::string(what) + ": matrix is not symmetric");
  }
}

}  // namespace

SpdRoot sqrtm_spd(const Matrix& m, const Tolerances& tol) {
  check_symmetric(m, tol.symmetry, "sqrtm_spd");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const Vector& lambda = es.eigenvalues();
  if (lambda.size() == 0) return {Matrix(0, 0), Matrix(0, 0)};
  const double max_eig = lambda.maxCoeff();
  if (!(lambda.minCoeff() > tol.definiteness * max_eig) || max_eig <= 0.0) {
    fail(ErrorCode::kNotPositiveDefinite,
         "sqrtm_spd: matrix is not positive definite");
  }
  const Matrix& v = es.eigenvectors();
  const Vector root = lambda.cwiseSqrt();
  SpdRoot out;
  out.sqrt = v * root.asDiagonal() * v.transpose();
  out.inv_sqrt = v * root.cwiseInverse().asDiagonal() * v.transpose();
  out.sqrt = 0.5 * (out.sqrt + out.sqrt.transpose()).eval();
  out.inv_sqrt = 0.5 * (out.inv_sqrt + out.inv_sqrt.transpose()).eval();
  return out;
}

Matrix solve_stein(const Matrix& a, const Matrix& b, const Matrix& q,
                   const Tolerances& tol) {
  require(a.rows() == a.cols() && b.rows() == b.cols(),
          ErrorCode::kDimensionMismatch, "solve_stein: coefficients must be square");
  require(q.rows() == a.rows() && q.cols() == b.rows(),
          ErrorCode::kDimensionMismatch, "solve_stein: Q has wrong shape");
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  if (n == 0 || m == 0) return Matrix::Zero(n, m);
  if (!is_stable(a, tol) || !is_stable(b, tol)) {
    std::ostringstream os;
    os << "solve_stein: coefficient not stable (spectral radius "
       << std::max(spectral_radius(a), spectral_radius(b)) << ")";
    fail(ErrorCode::kUnstable, os.str());
  }

  // A = U S U^H, B' = Z R Z^H with S, R upper triangular.
  Eigen::ComplexSchur<ComplexMatrix> schur_a(a.cast<Complex>());
  Eigen::ComplexSchur<ComplexMatrix> schur_b(b.transpose().cast<Complex>());
  const ComplexMatrix& u = schur_a.matrixU();
  const ComplexMatrix& s = schur_a.matrixT();
  const ComplexMatrix& z = schur_b.matrixU();
  const ComplexMatrix& r = schur_b.matrixT();

  const ComplexMatrix f = u.adjoint() * q.cast<Complex>() * z;
  ComplexMatrix y(n, m);
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i = 0; i < j; ++i) acc += r(i, j) * y.col(i);
    Eigen::VectorXcd rhs = f.col(j) + s * acc;
    const ComplexMatrix lhs = eye - r(j, j) * s;
    y.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (u * y * z.adjoint()).real();
}

Matrix dlyap(const Matrix& a, const Matrix& q, const Tolerances& tol) {
  require(a.rows() == a.cols(), ErrorCode::kDimensionMismatch,
          "dlyap: A is not square");
  require(q.rows() == a.rows() && q.cols() == a.rows(),
          ErrorCode::kDimensionMismatch, "dlyap: Q has wrong shape");
  if (!is_stable(a, tol)) {
    std::ostringstream os;
    os << "dlyap: A is not stable (spectral radius " << spectral_radius(a) << ")";
    fail(ErrorCode::kUnstable, os.str());
  }
  Matrix w = solve_stein(a, a, q, tol);
  return 0.5 * (w + w.transpose());
}

double min_eigenvalue_sym(const Matrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Vector solve_spd(const Matrix& h, const Vector& g, const Tolerances& tol) {
  require(h.rows() == h.cols() && h.rows() == g.size(),
          ErrorCode::kDimensionMismatch, "solve_spd: shape mismatch");
  if (h.size() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || !(lo > tol.definiteness * hi)) {
    fail(ErrorCode::kSingularHessian, "solve_spd: Hessian is singular or indefinite");
  }
  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kSingularHessian, "solve_spd: Cholesky factorization failed");
  }
  Vector v = llt.solve(g);
  // One step of iterative refinement keeps the residual at rounding level for
  // moderately conditioned Hessians.
  v += llt.solve(g - h * v);
  return v;
}

}  // namespace delayh2
