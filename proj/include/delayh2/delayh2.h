/* C interface to the delay-h2 synthesis library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return a dh2_status; on failure a
 * message describing the problem is available from dh2_last_error() on the
 * calling thread. Strings returned through char** must be released with
 * dh2_string_free(). Every function is safe to call concurrently on distinct
 * or shared (const) handles.
 */
#ifndef DELAYH2_DELAYH2_H
#define DELAYH2_DELAYH2_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define DH2_API __declspec(dllexport)
#else
#  define DH2_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dh2_status {
  DH2_OK = 0,
  DH2_INVALID_ARGUMENT = 1, /* null handle, unknown family, bad option */
  DH2_VALIDATION_ERROR = 2, /* input violates a modelling assumption */
  DH2_NUMERICAL_ERROR = 3,  /* a solver failed (e.g. Riccati non-convergence) */
  DH2_INTERNAL_ERROR = 4
} dh2_status;

typedef struct dh2_plant dh2_plant;
typedef struct dh2_pattern dh2_pattern;
typedef struct dh2_result dh2_result;

typedef struct dh2_plant_info {
  int states;
  int disturbances;
  int controls;
  int performance_outputs;
  int measurements;
  double spectral_radius;
} dh2_plant_info;

typedef struct dh2_norms {
  double centralized;
  double delayed;
  double decentralized;
  double decomposition_value;
} dh2_norms;

typedef struct dh2_report_options {
  int with_oracle;      /* nonzero: run the FIR least-squares oracle */
  int fir_length;       /* oracle M, default 60 */
  int cost_horizon;     /* oracle H, default 200 */
  int trials;           /* random stationarity directions, default 100 */
  uint64_t seed;
} dh2_report_options;

typedef struct dh2_check_options {
  double stationarity_tolerance; /* default 1e-7 */
  double perturbation;           /* perturb Q* before the stationarity check */
  int trials;
  uint64_t seed;
} dh2_check_options;

DH2_API const char* dh2_version(void);
DH2_API const char* dh2_last_error(void);
DH2_API void dh2_string_free(char* s);

DH2_API void dh2_report_options_init(dh2_report_options* opts);
DH2_API void dh2_check_options_init(dh2_check_options* opts);

/* Plants: JSON with keys A, B1, B2, C1, C2, D12, D21 (row-major arrays). */
DH2_API dh2_status dh2_plant_parse(const char* json, dh2_plant** out);
DH2_API dh2_status dh2_plant_load(const char* path, dh2_plant** out);
DH2_API dh2_status dh2_plant_to_json(const dh2_plant* plant, char** out);
DH2_API dh2_status dh2_plant_info_get(const dh2_plant* plant, dh2_plant_info* out);
DH2_API void dh2_plant_free(dh2_plant* plant);

/* Patterns: JSON with N, u_blocks, y_blocks and masks or delays. */
DH2_API dh2_status dh2_pattern_parse(const char* json, dh2_pattern** out);
DH2_API dh2_status dh2_pattern_load(const char* path, dh2_pattern** out);
/* family: tri, di, low, pure-delay, full, n-step, chain (N ignored: 2). */
DH2_API dh2_status dh2_pattern_family(const char* family, int horizon, const int* u_blocks,
                                      size_t u_count, const int* y_blocks, size_t y_count,
                                      dh2_pattern** out);
DH2_API dh2_status dh2_pattern_to_json(const dh2_pattern* pattern, char** out);
DH2_API int dh2_pattern_horizon(const dh2_pattern* pattern);
DH2_API void dh2_pattern_free(dh2_pattern* pattern);

DH2_API dh2_status dh2_synthesize(const dh2_plant* plant, const dh2_pattern* pattern,
                                  dh2_result** out);
DH2_API dh2_status dh2_result_norms(const dh2_result* result, dh2_norms* out);
DH2_API void dh2_result_free(dh2_result* result);

/* Deterministic JSON run report; *result_json (optional) additionally holds
 * Q*'s realization and V*'s coefficients. */
DH2_API dh2_status dh2_report(const dh2_result* result, const dh2_report_options* opts,
                              char** report_json, char** result_json);

DH2_API dh2_status dh2_oracle_norm(const dh2_plant* plant, const dh2_pattern* pattern,
                                   int fir_length, int cost_horizon, double* out);

/* Runs the invariant suite. *text gets one "PASS|FAIL|WARN name value threshold"
 * line per invariant; *all_pass is 1 iff no non-advisory check failed. */
DH2_API dh2_status dh2_check(const dh2_plant* plant, const dh2_pattern* pattern,
                             const dh2_check_options* opts, char** text, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* DELAYH2_DELAYH2_H */
