#include "delayh2/spectral.hpp"

namespace delayh2 {

FactorSet build_factors(const Plant& p, const ControlSolution& cs,
                        const EstimationSolution& es) {
  require(cs.K.rows() == p.controls() && cs.K.cols() == p.states(),
          ErrorCode::kDimensionMismatch, "build_factors: control gain has wrong shape");
  require(es.L.rows() == p.states() && es.L.cols() == p.measurements(),
          ErrorCode::kDimensionMismatch, "build_factors: estimation gain has wrong shape");
  const Eigen::Index p2 = p.controls();
  const Eigen::Index q2 = p.measurements();
  const Matrix& A = p.A();
  const Matrix& B2 = p.B2();
  const Matrix& C2 = p.C2();

  FactorSet fs;
  fs.W_L = StateSpace(A + B2 * cs.K, B2 * cs.OmegaHalfInv, cs.K, cs.OmegaHalfInv);
  fs.W_L_inv = StateSpace(A, -B2, cs.OmegaHalf * cs.K, cs.OmegaHalf);
  fs.W_R = StateSpace(A + es.L * C2, es.L, es.PsiHalfInv * C2, es.PsiHalfInv);
  fs.W_R_inv = StateSpace(A, es.L * es.PsiHalf, -C2, es.PsiHalf);
  fs.T = StateSpace(A, es.L * es.PsiHalf, cs.OmegaHalf * cs.K, Matrix::Zero(p2, q2));
  return fs;
}

StateSpace q_centralized(const FactorSet& fs) {
  return -series(series(fs.W_L, fs.T), fs.W_R);
}

StateSpace tail_project(const StateSpace& f, int n, const Tolerances& tol) {
  require(n >= 0, ErrorCode::kInvalidArgument, "tail_project: negative horizon");
  if (f.d().size() > 0 && f.d().cwiseAbs().maxCoeff() > tol.strictly_proper) {
    fail(ErrorCode::kNonStrictlyProper, "tail_project: F is not strictly proper");
  }
  if (n == 0) return f;
  // Lags > n of F are z^{-n} [A, A^n B; C, 0].
  Matrix anb = f.b();
  for (int i = 0; i < n; ++i) anb = f.a() * anb;
  const StateSpace advanced(f.a(), anb, f.c(), Matrix::Zero(f.outputs(), f.inputs()));
  return delay(advanced, n);
}

StateSpace q_delayed(const FactorSet& fs, int n) {
  return -series(series(fs.W_L, tail_project(fs.T, n)), fs.W_R);
}

}  // namespace delayh2
