#include "delayh2/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace delayh2 {

using nlohmann::json;

namespace {

void emit(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const json& v : j) {
        if (!first) out += ", ";
        first = false;
        emit(v, out, indent, depth + 1);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12e", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string format(const json& j) {
  std::string out;
  emit(j, out, 2, 0);
  out += "\n";
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_json(const RunReport& r) {
  json doc;
  doc["plant"] = {{"states", r.states},
                  {"disturbances", r.disturbances},
                  {"controls", r.controls},
                  {"performance_outputs", r.performance},
                  {"measurements", r.measurements},
                  {"spectral_radius", r.spectral_radius}};
  doc["pattern"] = {{"N", r.horizon},
                    {"u_blocks", r.u_blocks},
                    {"y_blocks", r.y_blocks},
                    {"free_entries", r.free_entries},
                    {"quadratically_invariant", r.quadratically_invariant}};
  json norms = {{"centralized", r.norm_centralized},
                {"delayed", r.norm_delayed},
                {"decentralized", r.norm_decentralized}};
  if (r.norm_oracle) norms["oracle"] = *r.norm_oracle;
  doc["norms"] = std::move(norms);
  doc["decomposition_value"] = r.decomposition_value;
  doc["stationarity"] = {{"residual", r.stationarity_residual},
                         {"trials", r.stationarity_trials},
                         {"seed", r.seed}};
  if (r.oracle_config) {
    doc["oracle"] = {{"fir_length", r.oracle_config->fir_length},
                     {"cost_horizon", r.oracle_config->cost_horizon}};
  }
  return doc;
}

}  // namespace

RunReport make_report(const Plant& plant, const InformationPattern& pattern,
                      const SynthesisResult& result, const ReportOptions& options,
                      const Tolerances& tol) {
  RunReport r;
  r.states = plant.states();
  r.disturbances = plant.disturbances();
  r.controls = plant.controls();
  r.performance = plant.performance();
  r.measurements = plant.measurements();
  r.spectral_radius = plant.spectral_radius();
  r.horizon = pattern.horizon();
  r.u_blocks = pattern.u_blocks().sizes();
  r.y_blocks = pattern.y_blocks().sizes();
  r.free_entries = pattern.free_entries();
  r.norm_centralized = result.norm_centralized;
  r.norm_delayed = result.norm_delayed;
  r.norm_decentralized = result.norm_decentralized;
  r.decomposition_value = result.decomposition_value;
  r.quadratically_invariant = pattern_is_quadratically_invariant(plant, pattern);
  r.stationarity_residual =
      stationarity_residual(plant, result.Q_star, pattern, options.stationarity, tol);
  r.stationarity_trials = options.stationarity.trials;
  r.seed = options.stationarity.seed;
  if (options.oracle) {
    r.oracle_config = options.oracle;
    r.norm_oracle = fir_truncated_optimum(plant, pattern, *options.oracle, tol).norm;
  }
  return r;
}

std::string report_to_json(const RunReport& report) { return format(report_json(report)); }

std::string result_to_json(const RunReport& report, const SynthesisResult& result) {
  json doc;
  doc["report"] = report_json(report);
  const StateSpace& q = result.Q_star;
  doc["Q_star"] = {{"A", matrix_json(q.a())},
                   {"B", matrix_json(q.b())},
                   {"C", matrix_json(q.c())},
                   {"D", matrix_json(q.d())}};
  json v = json::array();
  for (const Matrix& m : result.V_star.coefficients()) v.push_back(matrix_json(m));
  doc["V_star"] = std::move(v);
  return format(doc);
}

}  // namespace delayh2
