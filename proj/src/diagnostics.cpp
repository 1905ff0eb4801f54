#include "delayh2/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace delayh2 {

std::vector<Complex> unit_circle_samples(int count) {
  std::vector<Complex> z;
  z.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / count));
  }
  return z;
}

double left_factorization_error(const Plant& plant, const FactorSet& fs, int samples) {
  const StateSpace p12 = plant.p12();
  double worst = 0.0;
  for (const Complex z : unit_circle_samples(samples)) {
    const ComplexMatrix p = evalz(p12, z);
    const ComplexMatrix h = evalz(fs.W_L_inv, z);
    worst = std::max(worst, (p.adjoint() * p - h.adjoint() * h).norm());
  }
  return worst;
}

double right_factorization_error(const Plant& plant, const FactorSet& fs, int samples) {
  const StateSpace p21 = plant.p21();
  double worst = 0.0;
  for (const Complex z : unit_circle_samples(samples)) {
    const ComplexMatrix p = evalz(p21, z);
    const ComplexMatrix j = evalz(fs.W_R_inv, z);
    worst = std::max(worst, (p * p.adjoint() - j * j.adjoint()).norm());
  }
  return worst;
}

double inverse_identity_error(const StateSpace& w, const StateSpace& w_inv, int lags) {
  const std::vector<Matrix> mk = markov(series(w, w_inv), lags);
  double worst = (mk.front() - Matrix::Identity(w.outputs(), w_inv.inputs())).cwiseAbs().maxCoeff();
  for (size_t i = 1; i < mk.size(); ++i) worst = std::max(worst, mk[i].cwiseAbs().maxCoeff());
  return worst;
}

double pattern_violation(const StateSpace& q, const InformationPattern& pattern) {
  const std::vector<Matrix> mk = markov(q, pattern.horizon() + 1);
  double worst = 0.0;
  for (int lag = 1; lag <= pattern.horizon(); ++lag) {
    const Matrix outside =
        mk[static_cast<size_t>(lag)].cwiseProduct(
            (1.0 - pattern.entry_mask(lag).array()).matrix());
    worst = std::max(worst, outside.cwiseAbs().maxCoeff());
  }
  return worst;
}

double head_magnitude(const StateSpace& q, int n) {
  double worst = 0.0;
  for (const Matrix& m : markov(q, n + 1)) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

bool pattern_is_quadratically_invariant(const Plant& plant, const InformationPattern& pattern) {
  const auto delays = plant_block_delays(plant.p22(), pattern.u_blocks(), pattern.y_blocks(),
                                         pattern.horizon());
  return is_quadratically_invariant(pattern, delays);
}

FirTransfer random_feasible_fir(const InformationPattern& pattern, int horizon,
                                std::uint64_t seed) {
  const int rows = pattern.u_blocks().total();
  const int cols = pattern.y_blocks().total();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FirTransfer f = FirTransfer::zero(horizon, rows, cols);
  for (int lag = 1; lag <= horizon; ++lag) {
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < rows; ++r) {
        const double x = normal(rng);
        if (pattern.allows(lag, r, c)) f.at(lag)(r, c) = x;
      }
    }
  }
  const double norm = std::sqrt(f.squared_norm());
  if (norm > 0.0) {
    for (int lag = 1; lag <= horizon; ++lag) f.at(lag) /= norm;
  }
  return f;
}

namespace {

CheckItem at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value <= threshold, false};
}

}  // namespace

std::vector<CheckItem> run_checks(const Plant& plant, const InformationPattern& pattern,
                                  const CheckOptions& options, const Tolerances& tol) {
  const SynthesisResult r = synthesize(plant, pattern, tol);
  const int n = pattern.horizon();
  std::vector<CheckItem> items;

  items.push_back(at_most("control Riccati residual",
                          control_riccati_residual(plant, r.control.X),
                          1e-9 * (1.0 + r.control.X.norm())));
  items.push_back(at_most("estimation Riccati residual",
                          estimation_riccati_residual(plant, r.estimation.Y),
                          1e-9 * (1.0 + r.estimation.Y.norm())));
  items.push_back({"control closed loop stable (rho(A+B2K))", r.control.closed_loop_radius,
                   1.0, r.control.closed_loop_radius < 1.0, false});
  items.push_back({"estimation closed loop stable (rho(A+LC2))",
                   r.estimation.closed_loop_radius, 1.0,
                   r.estimation.closed_loop_radius < 1.0, false});
  items.push_back(at_most("left spectral factorization", left_factorization_error(plant, r.factors),
                          1e-8));
  items.push_back(at_most("right spectral factorization",
                          right_factorization_error(plant, r.factors), 1e-8));
  items.push_back(at_most("W_L W_L^-1 = I",
                          inverse_identity_error(r.factors.W_L, r.factors.W_L_inv), 1e-9));
  items.push_back(at_most("W_R W_R^-1 = I",
                          inverse_identity_error(r.factors.W_R, r.factors.W_R_inv), 1e-9));

  const double min_eig = min_eigenvalue_sym(r.qp.hessian);
  items.push_back({"QP Hessian positive definite (min eigenvalue)", min_eig, 0.0,
                   r.qp.empty() || min_eig > 0.0, false});

  const double decomposition =
      std::abs(r.norm_decentralized * r.norm_decentralized -
               r.norm_delayed * r.norm_delayed - r.decomposition_value);
  items.push_back(at_most("cost decomposition", decomposition, 1e-8));

  const double sandwich = std::max(r.norm_centralized - r.norm_decentralized,
                                   r.norm_decentralized - r.norm_delayed);
  items.push_back(at_most("norm ordering centralized <= decentralized <= delayed",
                          std::max(sandwich, 0.0), 1e-9));
  items.push_back(at_most("Q* respects the pattern", pattern_violation(r.Q_star, pattern), 1e-9));
  items.push_back(at_most("U* lies in z^-(N+1) H2", head_magnitude(r.U_star, n), 1e-9));

  StateSpace q = r.Q_star;
  if (options.perturbation != 0.0) {
    FirTransfer d = random_feasible_fir(pattern, n + options.stationarity.tail_lags,
                                        options.stationarity.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int lag = 1; lag <= d.horizon(); ++lag) d.at(lag) *= options.perturbation;
    q = add(q, fir_to_ss(d));
  }
  items.push_back(at_most("stationarity at Q*",
                          stationarity_residual(plant, q, pattern, options.stationarity, tol),
                          options.stationarity_tolerance));

  const bool qi = pattern_is_quadratically_invariant(plant, pattern);
  items.push_back({"pattern quadratically invariant", qi ? 1.0 : 0.0, 1.0, qi, true});
  return items;
}

}  // namespace delayh2
