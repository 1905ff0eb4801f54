#pragma once

#include "delayh2/pattern.hpp"
#include "delayh2/plant.hpp"

namespace delayh2 {

// Brute-force reference for the model-matching problem: Q is restricted to an
// FIR of length fir_length (lags 1..N masked by the pattern, the rest dense)
// and the closed-loop impulse response is truncated at cost_horizon. The
// resulting least-squares problem is solved directly, without any of the
// spectral-factorization machinery.
struct OracleConfig {
  int fir_length = 60;     // M
  int cost_horizon = 200;  // H
};

struct OracleResult {
  double norm = 0.0;  // sqrt of the truncated closed-loop energy
  FirTransfer Q;      // lags 1..M
  double condition = 1.0;
};

OracleResult fir_truncated_optimum(const Plant& plant, const InformationPattern& pattern,
                                   const OracleConfig& cfg = {},
                                   const Tolerances& tol = default_tolerances());

}  // namespace delayh2
