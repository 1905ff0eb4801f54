#pragma once

#include <vector>

#include "delayh2/numerics.hpp"

namespace delayh2 {

/// Discrete-time realization G(z) = C (zI - A)^{-1} B + D.
///
/// Stability is not part of the type; operations that need it (norms, inner
/// products) check it themselves.
class StateSpace {
 public:
  StateSpace() = default;
  StateSpace(Matrix a, Matrix b, Matrix c, Matrix d);

  static StateSpace static_gain(const Matrix& d);
  static StateSpace zero(Eigen::Index outputs, Eigen::Index inputs);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }
  const Matrix& d() const { return d_; }

  Eigen::Index states() const { return a_.rows(); }
  Eigen::Index inputs() const { return d_.cols(); }
  Eigen::Index outputs() const { return d_.rows(); }

  StateSpace operator-() const;

 private:
  Matrix a_, b_, c_, d_;
};

/// Strictly proper FIR transfer matrix sum_{i=1}^{N} z^{-i} M_i.
class FirTransfer {
 public:
  FirTransfer() = default;
  explicit FirTransfer(std::vector<Matrix> lag_coefficients);
  static FirTransfer zero(int horizon, Eigen::Index rows, Eigen::Index cols);

  int horizon() const { return static_cast<int>(coeffs_.size()); }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  // Coefficient of z^{-lag}, lag in [1, horizon].
  const Matrix& at(int lag) const { return coeffs_.at(lag - 1); }
  Matrix& at(int lag) { return coeffs_.at(lag - 1); }
  const std::vector<Matrix>& coefficients() const { return coeffs_; }

  // Sum of Tr(M_i M_i'), i.e. the squared H2 norm.
  double squared_norm() const;

 private:
  std::vector<Matrix> coeffs_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
};

/// Sum_i Tr(F_i G_i') over the common lags.
double fir_inner_product(const FirTransfer& f, const FirTransfer& g);

StateSpace series(const StateSpace& g1, const StateSpace& g2);
StateSpace add(const StateSpace& g1, const StateSpace& g2);

// Markov parameters [G_0, ..., G_{k-1}].
std::vector<Matrix> markov(const StateSpace& g, int k);

double h2_norm(const StateSpace& g, const Tolerances& tol = default_tolerances());

// <G, H> = sum_i Tr(G_i H_i'), computed from the cross Gramian.
double inner_product(const StateSpace& g, const StateSpace& h,
                     const Tolerances& tol = default_tolerances());

ComplexMatrix evalz(const StateSpace& g, Complex z,
                    const Tolerances& tol = default_tolerances());

// z^{-n} G(z), realized with n * outputs shift states on the output side.
StateSpace delay(const StateSpace& g, int n);

StateSpace fir_to_ss(const FirTransfer& f);

}  // namespace delayh2
