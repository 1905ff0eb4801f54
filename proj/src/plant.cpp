#include "delayh2/plant.hpp"

#include <sstream>

namespace delayh2 {

namespace {

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                   const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << "plant matrix " << name << " is " << m.rows() << "x" << m.cols()
       << ", expected " << rows << "x" << cols;
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
}

bool positive_definite(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                           Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().maxCoeff();
  return hi > 0.0 && es.eigenvalues().minCoeff() > tol.definiteness * hi;
}

}  // namespace

Plant::Plant(PlantMatrices m, const Tolerances& tol) : m_(std::move(m)) {
  const Eigen::Index n = m_.A.rows();
  require(m_.A.cols() == n, ErrorCode::kDimensionMismatch, "plant matrix A is not square");
  const Eigen::Index m1 = m_.B1.cols();
  const Eigen::Index p2 = m_.B2.cols();
  const Eigen::Index q1 = m_.C1.rows();
  const Eigen::Index q2 = m_.C2.rows();
  require_shape(m_.B1, n, m1, "B1");
  require_shape(m_.B2, n, p2, "B2");
  require_shape(m_.C1, q1, n, "C1");
  require_shape(m_.C2, q2, n, "C2");
  require_shape(m_.D12, q1, p2, "D12");
  require_shape(m_.D21, q2, m1, "D21");
  require(p2 > 0 && q2 > 0, ErrorCode::kDimensionMismatch,
          "plant must have at least one control and one measurement");
  check_finite(m_.A, "A");
  check_finite(m_.B1, "B1");
  check_finite(m_.B2, "B2");
  check_finite(m_.C1, "C1");
  check_finite(m_.C2, "C2");
  check_finite(m_.D12, "D12");
  check_finite(m_.D21, "D21");

  const double rho = delayh2::spectral_radius(m_.A);
  if (!(rho < 1.0 - tol.stability_margin)) {
    std::ostringstream os;
    os << "plant A is not stable (spectral radius " << rho << ")";
    fail(ErrorCode::kUnstable, os.str());
  }
  if (!positive_definite(m_.D12.transpose() * m_.D12, tol)) {
    fail(ErrorCode::kNotPositiveDefinite, "D12'D12 not positive definite");
  }
  if (!positive_definite(m_.D21 * m_.D21.transpose(), tol)) {
    fail(ErrorCode::kNotPositiveDefinite, "D21 D21' not positive definite");
  }
}

double Plant::spectral_radius() const { return delayh2::spectral_radius(m_.A); }

StateSpace Plant::p11() const {
  return StateSpace(m_.A, m_.B1, m_.C1, Matrix::Zero(performance(), disturbances()));
}
StateSpace Plant::p12() const { return StateSpace(m_.A, m_.B2, m_.C1, m_.D12); }
StateSpace Plant::p21() const { return StateSpace(m_.A, m_.B1, m_.C2, m_.D21); }
StateSpace Plant::p22() const {
  return StateSpace(m_.A, m_.B2, m_.C2, Matrix::Zero(measurements(), controls()));
}

Plant Plant::dual() const {
  PlantMatrices d;
  d.A = m_.A.transpose();
  d.B1 = m_.C1.transpose();
  d.B2 = m_.C2.transpose();
  d.C1 = m_.B1.transpose();
  d.C2 = m_.B2.transpose();
  d.D12 = m_.D21.transpose();
  d.D21 = m_.D12.transpose();
  return Plant(std::move(d));
}

StateSpace closed_loop(const Plant& plant, const StateSpace& q) {
  require(q.outputs() == plant.controls() && q.inputs() == plant.measurements(),
          ErrorCode::kDimensionMismatch, "closed_loop: Q has wrong shape");
  return add(plant.p11(), series(series(plant.p12(), q), plant.p21()));
}

StateSpace feedback_closed_loop(const Plant& plant, const StateSpace& k) {
  require(k.outputs() == plant.controls() && k.inputs() == plant.measurements(),
          ErrorCode::kDimensionMismatch, "feedback_closed_loop: K has wrong shape");
  require(k.d().norm() == 0.0, ErrorCode::kNonStrictlyProper,
          "feedback_closed_loop: K must be strictly proper");
  const Eigen::Index n = plant.states();
  const Eigen::Index nk = k.states();
  Matrix a(n + nk, n + nk);
  a << plant.A(), plant.B2() * k.c(), k.b() * plant.C2(), k.a();
  Matrix b(n + nk, plant.disturbances());
  b << plant.B1(), k.b() * plant.D21();
  Matrix c(plant.performance(), n + nk);
  c << plant.C1(), plant.D12() * k.c();
  return StateSpace(std::move(a), std::move(b), std::move(c),
                    Matrix::Zero(plant.performance(), plant.disturbances()));
}

}  // namespace delayh2
