#pragma once

#include <Eigen/Dense>
#include <complex>

#include "delayh2/error.hpp"

namespace delayh2 {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Tolerances shared by every solver in the library. The defaults are the
// values the test suites are calibrated against.
struct Tolerances {
  double symmetry = 1e-10;           // relative asymmetry allowed for SPD input
  double definiteness = 1e-12;       // min eig must exceed this * max eig
  double stability_margin = 1e-9;    // rho(A) must be below 1 - margin
  double riccati_convergence = 1e-12;
  int riccati_max_iterations = 100000;
  double resolvent = 1e-12;          // min |z - lambda| for evalz
  double strictly_proper = 1e-12;    // max |D| treated as zero
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

// Throws kNotFinite if any entry is NaN or infinite.
void check_finite(const Matrix& m, const char* name);

double spectral_radius(const Matrix& a);

bool is_stable(const Matrix& a, const Tolerances& tol = default_tolerances());

// Symmetric positive definite square root together with its inverse.
struct SpdRoot {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SpdRoot sqrtm_spd(const Matrix& m, const Tolerances& tol = default_tolerances());

// Solves W = A W B' + Q for stable A, B by complex Schur reduction of both
// coefficients followed by column-wise back substitution.
Matrix solve_stein(const Matrix& a, const Matrix& b, const Matrix& q,
                   const Tolerances& tol = default_tolerances());

// Discrete Lyapunov equation W = A W A' + Q. The result is symmetrized.
Matrix dlyap(const Matrix& a, const Matrix& q,
             const Tolerances& tol = default_tolerances());

// Solves H v = g for symmetric positive definite H.
Vector solve_spd(const Matrix& h, const Vector& g,
                 const Tolerances& tol = default_tolerances());

// Smallest eigenvalue of a symmetric matrix (+inf for an empty matrix).
double min_eigenvalue_sym(const Matrix& m);

}  // namespace delayh2
