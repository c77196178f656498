/* C interface to the wrank library.
 *
 * Every function returns a wrank_status; on failure wrank_last_error()
 * describes the problem for the calling thread. Handles are opaque and must
 * be released with the matching *_free function.
 */
#ifndef WRANK_H
#define WRANK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WRANK_BUILDING)
#    define WRANK_API __declspec(dllexport)
#  else
#    define WRANK_API __declspec(dllimport)
#  endif
#else
#  define WRANK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wrank_status {
  WRANK_OK = 0,
  WRANK_INVALID_INPUT = 1,
  WRANK_DOMAIN = 2,
  WRANK_UNSUPPORTED = 3,
  WRANK_NOT_POSITIVE_DEFINITE = 4,
  WRANK_NUMERICAL = 5,
  WRANK_CONFIG = 6,
  WRANK_IO = 7,
  WRANK_PARTIAL_FAILURE = 8, /* some replications failed; results still written */
  WRANK_INTERNAL = 99
} wrank_status;

typedef struct wrank_scoregen wrank_scoregen;
typedef struct wrank_roc wrank_roc;
typedef struct wrank_config wrank_config;
typedef struct wrank_result wrank_result;
typedef struct wrank_rate wrank_rate;

WRANK_API const char* wrank_version(void);
/* Message of the last failed call on this thread; "" if none. */
WRANK_API const char* wrank_last_error(void);

/* Score-generating functions, e.g. "mww", "pol:q=3", "rtb:u0=0.9". */
WRANK_API wrank_status wrank_scoregen_parse(const char* spec, wrank_scoregen** out);
WRANK_API void wrank_scoregen_free(wrank_scoregen* phi);
WRANK_API wrank_status wrank_scoregen_value(const wrank_scoregen* phi, double u, double* out);
WRANK_API wrank_status wrank_scoregen_derivative(const wrank_scoregen* phi, double u,
                                                 double* out);
WRANK_API int wrank_scoregen_is_differentiable(const wrank_scoregen* phi);
/* Canonical spec; writes at most `size` bytes including the terminator and
 * stores the full length in *needed when non-null. */
WRANK_API wrank_status wrank_scoregen_describe(const wrank_scoregen* phi, char* buf, size_t size,
                                               size_t* needed);

/* Two-sample rank statistics on raw score arrays. */
WRANK_API wrank_status wrank_rank_positives(const double* pos, size_t n, const double* neg,
                                            size_t m, double* ranks_out);
WRANK_API wrank_status wrank_linear_rank_statistic(const double* pos, size_t n, const double* neg,
                                                   size_t m, const wrank_scoregen* phi,
                                                   double* out);
WRANK_API wrank_status wrank_wilcoxon_statistic(const double* pos, size_t n, const double* neg,
                                                size_t m, double* out);
WRANK_API wrank_status wrank_empirical_auc(const double* pos, size_t n, const double* neg,
                                           size_t m, double* out);
WRANK_API wrank_status wrank_pooled_ecdf(const double* pos, size_t n, const double* neg, size_t m,
                                         double t, double* out);

/* ROC curves. */
WRANK_API wrank_status wrank_roc_empirical(const double* pos, size_t n, const double* neg,
                                           size_t m, wrank_roc** out);
WRANK_API void wrank_roc_free(wrank_roc* roc);
WRANK_API size_t wrank_roc_size(const wrank_roc* roc);
/* Copies the breakpoints; alpha and beta must hold wrank_roc_size() values. */
WRANK_API wrank_status wrank_roc_points(const wrank_roc* roc, double* alpha, double* beta);
WRANK_API wrank_status wrank_roc_beta_at(const wrank_roc* roc, double alpha, double* out);
WRANK_API wrank_status wrank_roc_auc(const wrank_roc* roc, double* out);
WRANK_API wrank_status wrank_roc_sup_distance(const wrank_roc* a, const wrank_roc* b,
                                              double* out);
WRANK_API wrank_status wrank_roc_w_phi(const wrank_roc* roc, const wrank_scoregen* phi, double p,
                                       double* out);
WRANK_API wrank_status wrank_roc_write_csv(const wrank_roc* roc, const char* path);

/* Experiment configuration. Keys are "section.key", e.g. "experiment.seed". */
WRANK_API wrank_status wrank_config_create(wrank_config** out);
WRANK_API void wrank_config_free(wrank_config* cfg);
WRANK_API wrank_status wrank_config_load(wrank_config* cfg, const char* path);
WRANK_API wrank_status wrank_config_set(wrank_config* cfg, const char* key, const char* value);
WRANK_API wrank_status wrank_config_validate(const wrank_config* cfg);
WRANK_API wrank_status wrank_config_resolved(const wrank_config* cfg, char* buf, size_t size,
                                             size_t* needed);

/* Runs every replication and writes the CSV outputs. Returns
 * WRANK_PARTIAL_FAILURE (with *out still set) when some fits failed. */
WRANK_API wrank_status wrank_run_experiment(const wrank_config* cfg, wrank_result** out);
WRANK_API void wrank_result_free(wrank_result* res);
WRANK_API int wrank_result_replications(const wrank_result* res);
WRANK_API int wrank_result_phi_count(const wrank_result* res);
WRANK_API int wrank_result_failed_runs(const wrank_result* res);
WRANK_API double wrank_result_auc_star(const wrank_result* res);
/* Test AUC of replication `rep` for the `phi`-th function; NaN if it failed. */
WRANK_API wrank_status wrank_result_test_auc(const wrank_result* res, int rep, int phi,
                                             double* out);
WRANK_API wrank_status wrank_result_mean_test_auc(const wrank_result* res, int phi, double* out);
/* First and last smoothed training criterion of one run. */
WRANK_API wrank_status wrank_result_criterion_ends(const wrank_result* res, int rep, int phi,
                                                   double* initial, double* final_value);

WRANK_API wrank_status wrank_rate_experiment(const wrank_config* cfg, wrank_rate** out);
WRANK_API void wrank_rate_free(wrank_rate* rate);
WRANK_API double wrank_rate_median_slope(const wrank_rate* rate);
WRANK_API int wrank_rate_seed_count(const wrank_rate* rate);
WRANK_API wrank_status wrank_rate_slope(const wrank_rate* rate, int seed, double* out);

/* Invariant self-checks; the callback receives one line per check. Returns
 * the number of failed checks in *failed. */
typedef void (*wrank_check_callback)(const char* name, int passed, const char* detail,
                                     void* user);
WRANK_API wrank_status wrank_run_checks(uint64_t seed, wrank_check_callback cb, void* user,
                                        int* failed);

#ifdef __cplusplus
}
#endif

#endif
