#pragma once

#include <cstdint>
#include <vector>

#include "delayh2/pattern.hpp"
#include "delayh2/spectral.hpp"

namespace delayh2 {

// Leading impulse-response coefficients of H = W_L^{-1} and J = W_R^{-1}:
//   H_0 = Omega^{1/2},  H_i = -Omega^{1/2} K A^{i-1} B2
//   J_0 = Psi^{1/2},    J_i = -C2 A^{i-1} L Psi^{1/2}
struct FactorCoefficients {
  std::vector<Matrix> H;  // H_0 .. H_{N-1}
  std::vector<Matrix> J;  // J_0 .. J_{N-1}
};

FactorCoefficients hj_coefficients(const Plant& plant, const ControlSolution& cs,
                                   const EstimationSolution& es, int n);

// T_i = Omega^{1/2} K A^{i-1} L Psi^{1/2} for i = 1..N.
FirTransfer t_coefficients(const Plant& plant, const ControlSolution& cs,
                           const EstimationSolution& es, int n);

// Lags 1..N of H V J, i.e. G_i = sum_{j+k+l=i, k>=1} H_j V_k J_l.
FirTransfer g_coefficients(const FirTransfer& v, const std::vector<Matrix>& h,
                           const std::vector<Matrix>& j);

struct QpVariable {
  int lag;
  int block_row;
  int block_col;
  int row;  // entry row within the p2 x q2 coefficient
  int col;
};

// min_v  v' H v + 2 v' M' t  with H = M'M, where M maps the free entries of V
// to the stacked column-major vec(G_1), ..., vec(G_N) and t stacks vec(T_i).
struct QpProblem {
  int horizon = 0;
  Eigen::Index rows = 0;  // p2
  Eigen::Index cols = 0;  // q2
  std::vector<QpVariable> variables;
  Matrix map_matrix;
  Vector target;
  Vector linear_term;
  Matrix hessian;

  bool empty() const { return variables.empty(); }
  double objective(const Vector& v) const;
  FirTransfer scatter(const Vector& v) const;
};

QpProblem assemble_qp(const InformationPattern& pattern, const std::vector<Matrix>& h,
                      const std::vector<Matrix>& j, const FirTransfer& t);

struct QpSolution {
  Vector v;
  FirTransfer V;
  double objective = 0.0;
};

QpSolution solve_qp(const QpProblem& qp, const Tolerances& tol = default_tolerances());

inline FirTransfer solve_v(const QpProblem& qp,
                           const Tolerances& tol = default_tolerances()) {
  return solve_qp(qp, tol).V;
}

struct SynthesisResult {
  ControlSolution control;
  EstimationSolution estimation;
  FactorSet factors;
  FactorCoefficients hj;
  FirTransfer T;  // lags 1..N of T
  QpProblem qp;
  QpSolution qp_solution;

  FirTransfer V_star;
  FirTransfer G;
  StateSpace Q_centralized;  // Q0
  StateSpace Q_delayed;      // Q_N
  StateSpace Q_star;
  StateSpace U_star;

  double norm_centralized = 0.0;
  double norm_delayed = 0.0;
  double norm_decentralized = 0.0;
  double decomposition_value = 0.0;  // ||G||^2 + 2 <G, T>
};

SynthesisResult synthesize(const Plant& plant, const InformationPattern& pattern,
                           const Tolerances& tol = default_tolerances());

inline constexpr std::uint64_t kDefaultStationaritySeed = 20130611;

struct StationarityOptions {
  int trials = 100;
  std::uint64_t seed = kDefaultStationaritySeed;
  int tail_lags = 5;          // dense lags N+1 .. N+tail_lags
};

// Largest |d/de ||P11 + P12 (Q + e delta) P21||^2| over random unit-norm FIR
// directions delta whose lags 1..N respect `pattern`.
double stationarity_residual(const Plant& plant, const StateSpace& q,
                             const InformationPattern& pattern,
                             const StationarityOptions& options = {},
                             const Tolerances& tol = default_tolerances());

// K = Q (I + P22 Q)^{-1} for strictly proper Q.
StateSpace recover_feedback(const StateSpace& q, const Plant& plant,
                            const Tolerances& tol = default_tolerances());

}  // namespace delayh2
