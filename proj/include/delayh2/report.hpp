#pragma once

#include <optional>
#include <string>

#include "delayh2/diagnostics.hpp"
#include "delayh2/oracle.hpp"

namespace delayh2 {

struct ReportOptions {
  std::optional<OracleConfig> oracle;
  StationarityOptions stationarity;
};

struct RunReport {
  // plant digest
  Eigen::Index states = 0, disturbances = 0, controls = 0, performance = 0, measurements = 0;
  double spectral_radius = 0.0;
  // pattern summary
  int horizon = 0;
  std::vector<int> u_blocks, y_blocks;
  int free_entries = 0;
  // results
  double norm_centralized = 0.0;
  double norm_delayed = 0.0;
  double norm_decentralized = 0.0;
  std::optional<double> norm_oracle;
  std::optional<OracleConfig> oracle_config;
  double decomposition_value = 0.0;
  bool quadratically_invariant = false;
  double stationarity_residual = 0.0;
  int stationarity_trials = 0;
  std::uint64_t seed = 0;
};

RunReport make_report(const Plant& plant, const InformationPattern& pattern,
                      const SynthesisResult& result, const ReportOptions& options = {},
                      const Tolerances& tol = default_tolerances());

// Sorted keys, floats as %.12e.
std::string report_to_json(const RunReport& report);

// Report plus Q*'s realization and V*'s coefficients.
std::string result_to_json(const RunReport& report, const SynthesisResult& result);

}  // namespace delayh2
