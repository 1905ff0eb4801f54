#pragma once

#include <string>

#include "delayh2/statespace.hpp"

namespace delayh2 {

// Generalized plant
//
//   [ A  | B1  B2  ]
//   [ C1 | 0   D12 ]
//   [ C2 | D21 0   ]
//
// with disturbance w (m1), control u (p2), performance z (q1) and
// measurement y (q2).
struct PlantMatrices {
  Matrix A, B1, B2, C1, C2, D12, D21;
};

class Plant {
 public:
  // Validates dimensions, stability of A and definiteness of D12'D12 and
  // D21 D21'. Throws Error naming the violated assumption.
  explicit Plant(PlantMatrices m, const Tolerances& tol = default_tolerances());

  const Matrix& A() const { return m_.A; }
  const Matrix& B1() const { return m_.B1; }
  const Matrix& B2() const { return m_.B2; }
  const Matrix& C1() const { return m_.C1; }
  const Matrix& C2() const { return m_.C2; }
  const Matrix& D12() const { return m_.D12; }
  const Matrix& D21() const { return m_.D21; }
  const PlantMatrices& matrices() const { return m_; }

  Eigen::Index states() const { return m_.A.rows(); }
  Eigen::Index disturbances() const { return m_.B1.cols(); }  // m1
  Eigen::Index controls() const { return m_.B2.cols(); }      // p2
  Eigen::Index performance() const { return m_.C1.rows(); }   // q1
  Eigen::Index measurements() const { return m_.C2.rows(); }  // q2

  double spectral_radius() const;

  StateSpace p11() const;
  StateSpace p12() const;
  StateSpace p21() const;
  StateSpace p22() const;

  // (A', C2', C1', B1', B2', D21', D12'): estimation for this plant is
  // control for the dual.
  Plant dual() const;

 private:
  PlantMatrices m_;
};

// P11 + P12 Q P21.
StateSpace closed_loop(const Plant& plant, const StateSpace& q);

// Closed loop of the plant under feedback u = K y (K strictly proper):
// P11 + P12 K (I - P22 K)^{-1} P21.
StateSpace feedback_closed_loop(const Plant& plant, const StateSpace& k);

}  // namespace delayh2
