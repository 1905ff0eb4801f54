#pragma once

#include <string>
#include <vector>

#include "delayh2/synthesis.hpp"

namespace delayh2 {

// z_k = exp(2 pi i k / count), k = 0..count-1.
std::vector<Complex> unit_circle_samples(int count);

// max_k || P12(z_k)^* P12(z_k) - W_L^{-1}(z_k)^* W_L^{-1}(z_k) ||_F
double left_factorization_error(const Plant& plant, const FactorSet& fs, int samples = 64);
// max_k || P21(z_k) P21(z_k)^* - W_R^{-1}(z_k) W_R^{-1}(z_k)^* ||_F
double right_factorization_error(const Plant& plant, const FactorSet& fs, int samples = 64);

// Largest deviation of markov(series(w, w_inv), lags) from [I, 0, ..., 0].
double inverse_identity_error(const StateSpace& w, const StateSpace& w_inv, int lags = 20);

// Largest |entry| of the lag 1..N Markov parameters of q outside the pattern.
double pattern_violation(const StateSpace& q, const InformationPattern& pattern);

// Largest |entry| of the Markov parameters of q at lags 0..n.
double head_magnitude(const StateSpace& q, int n);

// Block-delay quadratic invariance of the pattern against the plant's P22.
bool pattern_is_quadratically_invariant(const Plant& plant, const InformationPattern& pattern);

struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool advisory = false;  // reported, never fails the run
};

struct CheckOptions {
  double stationarity_tolerance = 1e-7;
  StationarityOptions stationarity;
  // When nonzero, Q* is perturbed by this multiple of a random feasible
  // unit-norm FIR before the stationarity check.
  double perturbation = 0.0;
};

std::vector<CheckItem> run_checks(const Plant& plant, const InformationPattern& pattern,
                                  const CheckOptions& options = {},
                                  const Tolerances& tol = default_tolerances());

// Random unit-norm FIR of the given horizon whose lags respect the pattern.
FirTransfer random_feasible_fir(const InformationPattern& pattern, int horizon,
                                std::uint64_t seed);

}  // namespace delayh2
