#include "delayh2/delayh2.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "delayh2/io.hpp"
#include "delayh2/report.hpp"

struct dh2_plant {
  delayh2::Plant plant;
};

struct dh2_pattern {
  delayh2::InformationPattern pattern;
};

struct dh2_result {
  delayh2::Plant plant;
  delayh2::InformationPattern pattern;
  delayh2::SynthesisResult result;
};

namespace {

thread_local std::string last_error;

dh2_status set_error(dh2_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
dh2_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return DH2_OK;
  } catch (const delayh2::Error& e) {
    return set_error(delayh2::is_validation_error(e.code()) ? DH2_VALIDATION_ERROR
                                                            : DH2_NUMERICAL_ERROR,
                     e.what());
  } catch (const std::exception& e) {
    return set_error(DH2_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(DH2_INTERNAL_ERROR, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define DH2_REQUIRE_ARG(cond, msg) \
  do {                             \
    if (!(cond)) return set_error(DH2_INVALID_ARGUMENT, msg); \
  } while (0)

}  // namespace

extern "C" {

const char* dh2_version(void) { return "1.0.0"; }

const char* dh2_last_error(void) { return last_error.c_str(); }

void dh2_string_free(char* s) { std::free(s); }

void dh2_report_options_init(dh2_report_options* opts) {
  if (opts == nullptr) return;
  opts->with_oracle = 0;
  opts->fir_length = 60;
  opts->cost_horizon = 200;
  opts->trials = 100;
  opts->seed = delayh2::kDefaultStationaritySeed;
}

void dh2_check_options_init(dh2_check_options* opts) {
  if (opts == nullptr) return;
  opts->stationarity_tolerance = 1e-7;
  opts->perturbation = 0.0;
  opts->trials = 100;
  opts->seed = delayh2::kDefaultStationaritySeed;
}

dh2_status dh2_plant_parse(const char* json, dh2_plant** out) {
  DH2_REQUIRE_ARG(json != nullptr && out != nullptr, "dh2_plant_parse: null argument");
  return guarded([&] { *out = new dh2_plant{delayh2::parse_plant(json)}; });
}

dh2_status dh2_plant_load(const char* path, dh2_plant** out) {
  DH2_REQUIRE_ARG(path != nullptr && out != nullptr, "dh2_plant_load: null argument");
  return guarded([&] {
    *out = new dh2_plant{delayh2::parse_plant(delayh2::read_text_file(path))};
  });
}

dh2_status dh2_plant_to_json(const dh2_plant* plant, char** out) {
  DH2_REQUIRE_ARG(plant != nullptr && out != nullptr, "dh2_plant_to_json: null argument");
  return guarded([&] { *out = copy_string(delayh2::plant_to_json(plant->plant.matrices())); });
}

dh2_status dh2_plant_info_get(const dh2_plant* plant, dh2_plant_info* out) {
  DH2_REQUIRE_ARG(plant != nullptr && out != nullptr, "dh2_plant_info_get: null argument");
  return guarded([&] {
    const delayh2::Plant& p = plant->plant;
    out->states = static_cast<int>(p.states());
    out->disturbances = static_cast<int>(p.disturbances());
    out->controls = static_cast<int>(p.controls());
    out->performance_outputs = static_cast<int>(p.performance());
    out->measurements = static_cast<int>(p.measurements());
    out->spectral_radius = p.spectral_radius();
  });
}

void dh2_plant_free(dh2_plant* plant) { delete plant; }

dh2_status dh2_pattern_parse(const char* json, dh2_pattern** out) {
  DH2_REQUIRE_ARG(json != nullptr && out != nullptr, "dh2_pattern_parse: null argument");
  return guarded([&] { *out = new dh2_pattern{delayh2::parse_pattern(json)}; });
}

dh2_status dh2_pattern_load(const char* path, dh2_pattern** out) {
  DH2_REQUIRE_ARG(path != nullptr && out != nullptr, "dh2_pattern_load: null argument");
  return guarded([&] {
    *out = new dh2_pattern{delayh2::parse_pattern(delayh2::read_text_file(path))};
  });
}

dh2_status dh2_pattern_family(const char* family, int horizon, const int* u_blocks,
                              size_t u_count, const int* y_blocks, size_t y_count,
                              dh2_pattern** out) {
  DH2_REQUIRE_ARG(family != nullptr && out != nullptr, "dh2_pattern_family: null argument");
  DH2_REQUIRE_ARG(u_blocks != nullptr && y_blocks != nullptr && u_count > 0 && y_count > 0,
                  "dh2_pattern_family: empty block partition");
  const std::string name(family);
  dh2_status st = guarded([&] {
    const delayh2::BlockPartition u(std::vector<int>(u_blocks, u_blocks + u_count));
    const delayh2::BlockPartition y(std::vector<int>(y_blocks, y_blocks + y_count));
    if (name == "chain") {
      *out = new dh2_pattern{delayh2::chain_pattern(u, y)};
    } else {
      *out = new dh2_pattern{delayh2::family_pattern(name, u, y, horizon)};
    }
  });
  if (st == DH2_VALIDATION_ERROR && last_error.rfind("unknown pattern family", 0) == 0) {
    st = DH2_INVALID_ARGUMENT;
  }
  return st;
}

dh2_status dh2_pattern_to_json(const dh2_pattern* pattern, char** out) {
  DH2_REQUIRE_ARG(pattern != nullptr && out != nullptr, "dh2_pattern_to_json: null argument");
  return guarded([&] { *out = copy_string(delayh2::pattern_to_json(pattern->pattern)); });
}

int dh2_pattern_horizon(const dh2_pattern* pattern) {
  return pattern == nullptr ? 0 : pattern->pattern.horizon();
}

void dh2_pattern_free(dh2_pattern* pattern) { delete pattern; }

dh2_status dh2_synthesize(const dh2_plant* plant, const dh2_pattern* pattern,
                          dh2_result** out) {
  DH2_REQUIRE_ARG(plant != nullptr && pattern != nullptr && out != nullptr,
                  "dh2_synthesize: null argument");
  return guarded([&] {
    *out = new dh2_result{plant->plant, pattern->pattern,
                          delayh2::synthesize(plant->plant, pattern->pattern)};
  });
}

dh2_status dh2_result_norms(const dh2_result* result, dh2_norms* out) {
  DH2_REQUIRE_ARG(result != nullptr && out != nullptr, "dh2_result_norms: null argument");
  out->centralized = result->result.norm_centralized;
  out->delayed = result->result.norm_delayed;
  out->decentralized = result->result.norm_decentralized;
  out->decomposition_value = result->result.decomposition_value;
  return DH2_OK;
}

void dh2_result_free(dh2_result* result) { delete result; }

dh2_status dh2_report(const dh2_result* result, const dh2_report_options* opts,
                      char** report_json, char** result_json) {
  DH2_REQUIRE_ARG(result != nullptr && report_json != nullptr, "dh2_report: null argument");
  dh2_report_options defaults;
  dh2_report_options_init(&defaults);
  const dh2_report_options& o = opts != nullptr ? *opts : defaults;
  DH2_REQUIRE_ARG(o.trials > 0, "dh2_report: trials must be positive");
  return guarded([&] {
    delayh2::ReportOptions ro;
    ro.stationarity.trials = o.trials;
    ro.stationarity.seed = o.seed;
    if (o.with_oracle != 0) ro.oracle = delayh2::OracleConfig{o.fir_length, o.cost_horizon};
    const delayh2::RunReport report =
        delayh2::make_report(result->plant, result->pattern, result->result, ro);
    std::string text = delayh2::report_to_json(report);
    std::string full;
    if (result_json != nullptr) full = delayh2::result_to_json(report, result->result);
    *report_json = copy_string(text);
    if (result_json != nullptr) *result_json = copy_string(full);
  });
}

dh2_status dh2_oracle_norm(const dh2_plant* plant, const dh2_pattern* pattern,
                           int fir_length, int cost_horizon, double* out) {
  DH2_REQUIRE_ARG(plant != nullptr && pattern != nullptr && out != nullptr,
                  "dh2_oracle_norm: null argument");
  return guarded([&] {
    *out = delayh2::fir_truncated_optimum(plant->plant, pattern->pattern,
                                          {fir_length, cost_horizon})
               .norm;
  });
}

dh2_status dh2_check(const dh2_plant* plant, const dh2_pattern* pattern,
                     const dh2_check_options* opts, char** text, int* all_pass) {
  DH2_REQUIRE_ARG(plant != nullptr && pattern != nullptr && text != nullptr &&
                      all_pass != nullptr,
                  "dh2_check: null argument");
  dh2_check_options defaults;
  dh2_check_options_init(&defaults);
  const dh2_check_options& o = opts != nullptr ? *opts : defaults;
  DH2_REQUIRE_ARG(o.trials > 0, "dh2_check: trials must be positive");
  return guarded([&] {
    delayh2::CheckOptions co;
    co.stationarity_tolerance = o.stationarity_tolerance;
    co.perturbation = o.perturbation;
    co.stationarity.trials = o.trials;
    co.stationarity.seed = o.seed;
    const auto items = delayh2::run_checks(plant->plant, pattern->pattern, co);
    std::string out;
    bool ok = true;
    for (const auto& item : items) {
      const char* tag = item.pass ? "PASS" : (item.advisory ? "WARN" : "FAIL");
      if (!item.pass && !item.advisory) ok = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "  value=%.3e  threshold=%.3e", item.value, item.threshold);
      out += std::string(tag) + "  " + item.name + buf + "\n";
    }
    *text = copy_string(out);
    *all_pass = ok ? 1 : 0;
  });
}

}  // extern "C"
