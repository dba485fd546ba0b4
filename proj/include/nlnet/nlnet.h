/* C interface of the nonlocal network traffic solver.
 *
 * Objects are opaque and owned by the caller: every handle returned through
 * an out-parameter must be released with the matching *_free function.
 * Functions return an nlnet_status; on failure nlnet_last_error() describes
 * the problem until the next failing call on the same thread. */
#ifndef NLNET_H
#define NLNET_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(NLNET_BUILDING)
#    define NLNET_API __declspec(dllexport)
#  else
#    define NLNET_API __declspec(dllimport)
#  endif
#else
#  define NLNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlnet_status {
  NLNET_OK = 0,
  NLNET_ERR_CONFIG = 1,   /* invalid scenario, network or parameter */
  NLNET_ERR_PARSE = 2,    /* malformed scenario file */
  NLNET_ERR_CFL = 3,      /* a density left [0, rho_max] during a run */
  NLNET_ERR_DOMAIN = 4,   /* argument outside a function's domain */
  NLNET_ERR_ARGUMENT = 5, /* null pointer, bad index, short buffer */
  NLNET_ERR_IO = 6,       /* file could not be read or written */
  NLNET_ERR_INTERNAL = 7
} nlnet_status;

typedef struct nlnet_scenario nlnet_scenario;
typedef struct nlnet_result nlnet_result;

typedef struct nlnet_measures {
  double outflow;
  double total_travel_time;
  double congestion;
  double final_time;
  /* |mass(T) - mass(0) - integral of (boundary influx - outflux)| */
  double mass_balance_error;
  size_t steps;
} nlnet_measures;

NLNET_API const char* nlnet_version(void);
NLNET_API const char* nlnet_last_error(void);
NLNET_API const char* nlnet_status_name(nlnet_status status);

/* ---- scenarios --------------------------------------------------------- */

NLNET_API nlnet_status nlnet_scenario_load(const char* path, nlnet_scenario** out);
NLNET_API nlnet_status nlnet_scenario_parse(const char* json, nlnet_scenario** out);
/* Known names: "diamond". */
NLNET_API nlnet_status nlnet_scenario_builtin(const char* name, nlnet_scenario** out);
NLNET_API nlnet_status nlnet_scenario_clone(const nlnet_scenario* s, nlnet_scenario** out);
NLNET_API void nlnet_scenario_free(nlnet_scenario* s);

/* eta and dx are checked for compatibility when the scenario is validated
 * or simulated, so they can be changed in either order. */
NLNET_API nlnet_status nlnet_scenario_set_eta(nlnet_scenario* s, double eta);
NLNET_API nlnet_status nlnet_scenario_set_dx(nlnet_scenario* s, double dx);
NLNET_API nlnet_status nlnet_scenario_set_horizon(nlnet_scenario* s, double horizon);
/* "nonlocal", "nonlocal-maxflux", "nonlocal-distribution", "local-maxflux",
 * "local-distribution" or "limit". */
NLNET_API nlnet_status nlnet_scenario_set_model(nlnet_scenario* s, const char* model);
/* "strict", "relaxed" or "adaptive". */
NLNET_API nlnet_status nlnet_scenario_set_cfl(nlnet_scenario* s, const char* mode);
NLNET_API nlnet_status nlnet_scenario_set_output_dir(nlnet_scenario* s, const char* dir);
NLNET_API nlnet_status nlnet_scenario_set_snapshot_times(nlnet_scenario* s, const double* times,
                                                         size_t n);
/* Roads summed by the total travel time; n = 0 restores the default (every
 * non-artificial road). */
NLNET_API nlnet_status nlnet_scenario_set_travel_time_roads(nlnet_scenario* s, const int* roads,
                                                            size_t n);

NLNET_API nlnet_status nlnet_scenario_get_eta(const nlnet_scenario* s, double* eta);
NLNET_API nlnet_status nlnet_scenario_get_horizon(const nlnet_scenario* s, double* horizon);
/* Copies the model name into buf (NUL-terminated); `needed` receives the
 * length including the terminator. */
NLNET_API nlnet_status nlnet_scenario_get_model(const nlnet_scenario* s, char* buf, size_t cap,
                                                size_t* needed);
/* Output directory; empty when none is configured. */
NLNET_API nlnet_status nlnet_scenario_get_output_dir(const nlnet_scenario* s, char* buf,
                                                     size_t cap, size_t* needed);

/* Canonical JSON. Release the string with nlnet_string_free. */
NLNET_API nlnet_status nlnet_scenario_save(const nlnet_scenario* s, char** json);
NLNET_API void nlnet_string_free(char* str);

/* Checks every modelling assumption. The violation messages stay readable
 * through nlnet_scenario_violation until the next validate call. */
NLNET_API nlnet_status nlnet_scenario_validate(nlnet_scenario* s, size_t* n_violations);
NLNET_API const char* nlnet_scenario_violation(const nlnet_scenario* s, size_t index);

/* ---- runs ---------------------------------------------------------------- */

NLNET_API nlnet_status nlnet_simulate(const nlnet_scenario* s, nlnet_result** out);
NLNET_API void nlnet_result_free(nlnet_result* r);

NLNET_API nlnet_status nlnet_result_measures(const nlnet_result* r, nlnet_measures* out);
/* Writes snapshots.csv, snapshot_<i>.csv, measures.csv, ratios.csv and
 * priorities.csv into dir (created if missing). */
NLNET_API nlnet_status nlnet_result_write(const nlnet_result* r, const char* dir);

NLNET_API size_t nlnet_result_road_count(const nlnet_result* r);
NLNET_API nlnet_status nlnet_result_road_id(const nlnet_result* r, size_t index, int* id);
NLNET_API size_t nlnet_result_warning_count(const nlnet_result* r);
NLNET_API const char* nlnet_result_warning(const nlnet_result* r, size_t index);

/* Cell densities of one road in the snapshot nearest to t. With buf == NULL
 * only the cell count is reported through n. */
NLNET_API nlnet_status nlnet_result_profile(const nlnet_result* r, int road, double t,
                                            double* buf, size_t cap, size_t* n);

/* sum_j |a_j - b_j| dx on one road at the snapshots nearest to t. */
NLNET_API nlnet_status nlnet_result_l1_distance(const nlnet_result* a, const nlnet_result* b,
                                                int road, double t, double* out);

/* Range of the observed split ratio onto out_road at a junction with two
 * outgoing roads, over steps whose incoming flux exceeds flux_floor. */
NLNET_API nlnet_status nlnet_result_split_ratio_range(const nlnet_result* r, int junction,
                                                      int out_road, double flux_floor,
                                                      double* min, double* max, size_t* samples);

/* ---- limit model reference ------------------------------------------------ */

/* Exact solution of the limit 1-to-1 Riemann problem sampled at xs. */
NLNET_API nlnet_status nlnet_riemann_limit_1to1(double rho_left, double rho_right,
                                                double rho_max2, double v2_0, double t,
                                                const double* xs, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* NLNET_H */
