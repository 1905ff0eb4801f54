#include "delayh2/riccati.hpp"

#include <sstream>

namespace delayh2 {

namespace {

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix control_gain(const Plant& p, const Matrix& x, const Matrix& omega) {
  const Matrix rhs = p.B2().transpose() * x * p.A() + p.D12().transpose() * p.C1();
  return -omega.ldlt().solve(rhs);
}

Matrix estimation_gain(const Plant& p, const Matrix& y, const Matrix& psi) {
  const Matrix lhs = p.A() * y * p.C2().transpose() + p.B1() * p.D21().transpose();
  // L = -lhs Psi^{-1}  <=>  Psi L' = -lhs'
  return -psi.ldlt().solve(lhs.transpose()).transpose();
}

// Shared fixed-point loop; `map` is one of the two Riccati maps.
template <class Map>
Matrix iterate(const Matrix& start, Map map, const Tolerances& tol, int* iterations,
               const char* which) {
  Matrix x = start;
  for (int k = 1; k <= tol.riccati_max_iterations; ++k) {
    Matrix next = map(x);
    const double step = (next - x).norm();
    x = std::move(next);
    if (step <= tol.riccati_convergence * (1.0 + x.norm())) {
      *iterations = k;
      return x;
    }
  }
  std::ostringstream os;
  os << which << " Riccati iteration did not converge after "
     << tol.riccati_max_iterations << " iterations";
  fail(ErrorCode::kNoConvergence, os.str());
}

}  // namespace

Matrix control_riccati_map(const Plant& p, const Matrix& x) {
  const Matrix omega = p.D12().transpose() * p.D12() + p.B2().transpose() * x * p.B2();
  const Matrix cross = p.A().transpose() * x * p.B2() + p.C1().transpose() * p.D12();
  const Matrix next = p.C1().transpose() * p.C1() + p.A().transpose() * x * p.A() -
                      cross * omega.ldlt().solve(cross.transpose());
  return symmetrize(next);
}

Matrix estimation_riccati_map(const Plant& p, const Matrix& y) {
  const Matrix psi = p.D21() * p.D21().transpose() + p.C2() * y * p.C2().transpose();
  const Matrix cross = p.A() * y * p.C2().transpose() + p.B1() * p.D21().transpose();
  const Matrix next = p.B1() * p.B1().transpose() + p.A() * y * p.A().transpose() -
                      cross * psi.ldlt().solve(cross.transpose());
  return symmetrize(next);
}

double control_riccati_residual(const Plant& p, const Matrix& x) {
  return (x - control_riccati_map(p, x)).norm();
}

double estimation_riccati_residual(const Plant& p, const Matrix& y) {
  return (y - estimation_riccati_map(p, y)).norm();
}

ControlSolution control_dare(const Plant& p, const Tolerances& tol) {
  ControlSolution s;
  const Matrix zero = Matrix::Zero(p.states(), p.states());
  s.X = iterate(zero, [&](const Matrix& x) { return control_riccati_map(p, x); }, tol,
                &s.iterations, "control");
  s.Omega = symmetrize(p.D12().transpose() * p.D12() + p.B2().transpose() * s.X * p.B2());
  s.K = control_gain(p, s.X, s.Omega);
  const SpdRoot root = sqrtm_spd(s.Omega, tol);
  s.OmegaHalf = root.sqrt;
  s.OmegaHalfInv = root.inv_sqrt;
  s.closed_loop_radius = spectral_radius(p.A() + p.B2() * s.K);
  if (!(s.closed_loop_radius < 1.0 - tol.stability_margin)) {
    std::ostringstream os;
    os << "control Riccati solution is not stabilizing (rho(A+B2K) = "
       << s.closed_loop_radius << ")";
    fail(ErrorCode::kNotStabilizing, os.str());
  }
  return s;
}

EstimationSolution estimation_dare(const Plant& p, const Tolerances& tol) {
  EstimationSolution s;
  const Matrix zero = Matrix::Zero(p.states(), p.states());
  s.Y = iterate(zero, [&](const Matrix& y) { return estimation_riccati_map(p, y); }, tol,
                &s.iterations, "estimation");
  s.Psi = symmetrize(p.D21() * p.D21().transpose() + p.C2() * s.Y * p.C2().transpose());
  s.L = estimation_gain(p, s.Y, s.Psi);
  const SpdRoot root = sqrtm_spd(s.Psi, tol);
  s.PsiHalf = root.sqrt;
  s.PsiHalfInv = root.inv_sqrt;
  s.closed_loop_radius = spectral_radius(p.A() + s.L * p.C2());
  if (!(s.closed_loop_radius < 1.0 - tol.stability_margin)) {
    std::ostringstream os;
    os << "estimation Riccati solution is not stabilizing (rho(A+LC2) = "
       << s.closed_loop_radius << ")";
    fail(ErrorCode::kNotStabilizing, os.str());
  }
  return s;
}

}  // namespace delayh2
