#pragma once

#include "delayh2/plant.hpp"

namespace delayh2 {

// Stabilizing solution of the control Riccati equation
//   X = C1'C1 + A'XA - (A'XB2 + C1'D12) Omega^{-1} (B2'XA + D12'C1),
//   Omega = D12'D12 + B2'XB2,  K = -Omega^{-1}(B2'XA + D12'C1).
struct ControlSolution {
  Matrix X;
  Matrix K;
  Matrix Omega;
  Matrix OmegaHalf;
  Matrix OmegaHalfInv;
  double closed_loop_radius = 0.0;  // rho(A + B2 K)
  int iterations = 0;
};

// Stabilizing solution of the estimation Riccati equation
//   Y = B1B1' + AYA' - (AYC2' + B1D21') Psi^{-1} (C2YA' + D21B1'),
//   Psi = D21D21' + C2YC2',  L = -(AYC2' + B1D21') Psi^{-1}.
struct EstimationSolution {
  Matrix Y;
  Matrix L;
  Matrix Psi;
  Matrix PsiHalf;
  Matrix PsiHalfInv;
  double closed_loop_radius = 0.0;  // rho(A + L C2)
  int iterations = 0;
};

// One application of the control Riccati map to X.
Matrix control_riccati_map(const Plant& plant, const Matrix& x);
Matrix estimation_riccati_map(const Plant& plant, const Matrix& y);

// Frobenius norm of X - map(X).
double control_riccati_residual(const Plant& plant, const Matrix& x);
double estimation_riccati_residual(const Plant& plant, const Matrix& y);

// Fixed-point iteration of the Riccati map from zero. Stability of A makes the
// iterates converge monotonically to the stabilizing solution; the result is
// certified by checking the closed-loop spectral radius.
ControlSolution control_dare(const Plant& plant,
                             const Tolerances& tol = default_tolerances());
EstimationSolution estimation_dare(const Plant& plant,
                                   const Tolerances& tol = default_tolerances());

}  // namespace delayh2
