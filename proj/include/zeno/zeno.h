#ifndef ZENO_ZENO_H
#define ZENO_ZENO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ZENO_BUILDING_LIBRARY)
#    define ZENO_API __declspec(dllexport)
#  else
#    define ZENO_API __declspec(dllimport)
#  endif
#else
#  define ZENO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes 1..14 mirror the library's error categories. */
typedef enum zeno_status {
  ZENO_OK = 0,
  ZENO_ERR_PARSE = 1,
  ZENO_ERR_DIMENSION = 2,
  ZENO_ERR_CAPACITY = 3,
  ZENO_ERR_INVALID_CODE = 4,
  ZENO_ERR_RANK = 5,
  ZENO_ERR_PHASE = 6,
  ZENO_ERR_MEMBERSHIP = 7,
  ZENO_ERR_ASSUMPTION_VIOLATION = 8,
  ZENO_ERR_DOMAIN = 9,
  ZENO_ERR_MODEL = 10,
  ZENO_ERR_PRECONDITION = 11,
  ZENO_ERR_DEGENERATE = 12,
  ZENO_ERR_SCHEMA = 13,
  ZENO_ERR_IO = 14,
  ZENO_ERR_INVALID_ARGUMENT = 15, /* null pointer or bad enum from the caller */
  ZENO_ERR_INTERNAL = 16
} zeno_status;

typedef enum zeno_protocol {
  ZENO_PROTOCOL_GROUP = 0,
  ZENO_PROTOCOL_GENERATORS = 1
} zeno_protocol;

typedef enum zeno_grid {
  ZENO_GRID_TAU = 0,
  ZENO_GRID_M = 1,
  ZENO_GRID_EPSILON = 2
} zeno_grid;

typedef enum zeno_log_level {
  ZENO_LOG_DEBUG = 0,
  ZENO_LOG_INFO = 1,
  ZENO_LOG_WARN = 2,
  ZENO_LOG_ERROR = 3,
  ZENO_LOG_OFF = 4
} zeno_log_level;

typedef struct zeno_code zeno_code;
typedef struct zeno_experiment zeno_experiment;
typedef struct zeno_report zeno_report;
typedef struct zeno_string zeno_string;

/* Message of the last failed call on this thread; never NULL. */
ZENO_API const char* zeno_last_error(void);
ZENO_API const char* zeno_status_name(zeno_status status);
ZENO_API const char* zeno_version(void);
ZENO_API void zeno_set_log_level(zeno_log_level level);

ZENO_API const char* zeno_string_data(const zeno_string* s);
ZENO_API size_t zeno_string_size(const zeno_string* s);
ZENO_API void zeno_string_free(zeno_string* s);

/* Stabilizer codes. */
ZENO_API zeno_status zeno_code_create(const char* const* generators, size_t count,
                                      zeno_code** out);
ZENO_API void zeno_code_free(zeno_code* code);
ZENO_API zeno_status zeno_code_info(const zeno_code* code, size_t* n, size_t* k, uint64_t* Q);
/* Sector label (bit j = anticommutes with generator j) of a Pauli label. */
ZENO_API zeno_status zeno_code_syndrome(const zeno_code* code, const char* pauli,
                                        uint32_t* syndrome);

/* Analytic bound. epsilon may be +INFINITY. */
typedef struct zeno_bound_params {
  uint64_t Q;
  double J0;
  double J1;
  double tau;
  uint64_t M;
  double epsilon;
  zeno_protocol protocol;
} zeno_bound_params;

typedef struct zeno_bound_result {
  double zeta;
  double xi;
  double Gamma_identity;
  double Gamma_g;
  double beta;
  double Gamma_plus;
  double Gamma_minus;
  double gamma_plus;
  double gamma_minus;
  double A_plus;
  double A_minus;
  double phi;
  double weak_term;
  double strong_term;
  double full_bound;
  double B1;          /* NaN when unavailable */
  double strong_limit;
  int B1_available;
  int j0_ge_j1;
  int degenerate;
} zeno_bound_result;

ZENO_API zeno_status zeno_bound_evaluate(const zeno_bound_params* params,
                                         zeno_bound_result* result);
ZENO_API zeno_status zeno_bound_json(const zeno_bound_params* params, zeno_string** out);

/* Experiments. */
ZENO_API zeno_status zeno_experiment_load(const char* path, zeno_experiment** out);
ZENO_API zeno_status zeno_experiment_parse(const char* json_text, zeno_experiment** out);
ZENO_API void zeno_experiment_free(zeno_experiment* exp);
/* Replaces one sweep grid. M values must be positive integers. */
ZENO_API zeno_status zeno_experiment_set_grid(zeno_experiment* exp, zeno_grid grid,
                                              const double* values, size_t count);
ZENO_API zeno_status zeno_experiment_set_protocols(zeno_experiment* exp,
                                                   const zeno_protocol* protocols, size_t count);
/* Rows pass when D_sim <= D_bound + tol; a negative tol demands a margin. */
ZENO_API zeno_status zeno_experiment_set_bound_tolerance(zeno_experiment* exp, double tol);
/* simulate = 0 evaluates bounds only. */
ZENO_API zeno_status zeno_experiment_run(const zeno_experiment* exp, unsigned jobs, int simulate,
                                         zeno_report** out);

ZENO_API void zeno_report_free(zeno_report* report);
ZENO_API size_t zeno_report_rows(const zeno_report* report);
/* In-hypothesis rows whose simulated distance exceeds the bound. */
ZENO_API size_t zeno_report_violations(const zeno_report* report);
ZENO_API size_t zeno_report_out_of_hypothesis(const zeno_report* report);
ZENO_API zeno_status zeno_report_json(const zeno_report* report, zeno_string** out);
ZENO_API zeno_status zeno_report_csv(const zeno_report* report, zeno_string** out);
/* Writes the CSV and JSON files named by the experiment config into dir. */
ZENO_API zeno_status zeno_report_write(const zeno_report* report, const zeno_experiment* exp,
                                       const char* dir);

/* Property suites: "pauli", "stabilizer", "measurement", "bounds", "all". */
ZENO_API zeno_status zeno_verify(const char* suite, uint64_t seed, double zeta_perturbation,
                                 int* passed, zeno_string** report);
ZENO_API zeno_status zeno_recurrence_check(double tolerance, int* passed, zeno_string** report);

#ifdef __cplusplus
}
#endif

#endif
