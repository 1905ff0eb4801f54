#pragma once

#include "delayh2/riccati.hpp"

namespace delayh2 {

// Spectral factors of P12~P12 = W_L^{-~} W_L^{-1} and
// P21 P21~ = W_R^{-1} W_R^{-~}, plus the matrix T that drives every optimal
// model-matching solution.
struct FactorSet {
  StateSpace W_L;      // [A+B2K, B2; K, I] Omega^{-1/2}
  StateSpace W_L_inv;  // Omega^{1/2} [A, -B2; K, I]
  StateSpace W_R;      // Psi^{-1/2} [A+LC2, L; C2, I]
  StateSpace W_R_inv;  // [A, L; -C2, I] Psi^{1/2}
  StateSpace T;        // Omega^{1/2} [A, L; K, 0] Psi^{1/2}
};

FactorSet build_factors(const Plant& plant, const ControlSolution& cs,
                        const EstimationSolution& es);

// Q0 = -W_L T W_R, the unconstrained optimum over strictly proper Q.
StateSpace q_centralized(const FactorSet& fs);

// Projection of a strictly proper stable F onto z^{-(n+1)} H2, i.e. the part
// of its impulse response at lags > n.
StateSpace tail_project(const StateSpace& f, int n,
                        const Tolerances& tol = default_tolerances());

// Q_N = -W_L P_{z^{-(N+1)}H2}(T) W_R, the optimum when every measurement
// reaches every controller with delay N+1. N = 0 gives Q0.
StateSpace q_delayed(const FactorSet& fs, int n);

}  // namespace delayh2
