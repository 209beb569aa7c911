#ifndef LOBTAIL_LOBTAIL_H
#define LOBTAIL_LOBTAIL_H

/* C interface to the lobtail heavy-tail toolkit.
 *
 * Every function returns an lt_status. On failure a message is available
 * from lt_last_error() on the calling thread until the next call that fails.
 * Handles are opaque and owned by the caller once returned. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LOBTAIL_BUILDING_LIBRARY)
#    define LT_API __declspec(dllexport)
#  else
#    define LT_API __declspec(dllimport)
#  endif
#else
#  define LT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lt_status {
  LT_OK = 0,
  LT_ERR_INVALID_ARGUMENT = 1,
  LT_ERR_DOMAIN = 2,
  LT_ERR_IO = 3,
  LT_ERR_CONFIG = 4,
  LT_ERR_NUMERIC = 5,
  LT_ERR_INTERNAL = 99
} lt_status;

typedef enum lt_family { LT_FAMILY_STABLE = 0, LT_FAMILY_GEV = 1, LT_FAMILY_GPD = 2 } lt_family;

typedef enum lt_method {
  LT_METHOD_MCCULLOCH = 0,
  LT_METHOD_MLE = 1,
  LT_METHOD_MIXED_LMOMENTS = 2,
  LT_METHOD_LMOMENTS = 3,
  LT_METHOD_MOM = 4,
  LT_METHOD_PICKANDS = 5,
  LT_METHOD_EPM = 6
} lt_method;

typedef struct lt_fit lt_fit;

LT_API const char* lt_version(void);
LT_API const char* lt_last_error(void);
LT_API const char* lt_status_name(lt_status status);

/* Fits `family` by `method` on data[0..n). GPD data are threshold excesses;
 * GEV data are block maxima. The KS statistic against the fitted CDF is
 * filled in. */
LT_API lt_status lt_fit_data(lt_family family, lt_method method, const double* data, size_t n,
                             lt_fit** out);
LT_API void lt_fit_free(lt_fit* fit);

LT_API lt_status lt_fit_family(const lt_fit* fit, lt_family* out);
LT_API lt_status lt_fit_method(const lt_fit* fit, lt_method* out);
/* Stable: alpha, beta, gamma, delta. GEV: mu, sigma, gamma. GPD: gamma,
 * sigma, mu. */
LT_API lt_status lt_fit_param_count(const lt_fit* fit, size_t* out);
LT_API lt_status lt_fit_param(const lt_fit* fit, size_t index, double* value, const char** name);
LT_API lt_status lt_fit_converged(const lt_fit* fit, int* out);
LT_API lt_status lt_fit_ks(const lt_fit* fit, double* statistic, double* pvalue);
LT_API lt_status lt_fit_note_count(const lt_fit* fit, size_t* out);
LT_API lt_status lt_fit_note(const lt_fit* fit, size_t index, const char** out);

/* S_alpha(beta, gamma, delta; 0) distribution function. */
LT_API lt_status lt_stable_cdf(double x, double alpha, double beta, double gamma, double delta,
                               double* out);

/* One-sample KS test of data against a fitted model. */
LT_API lt_status lt_ks_test(const lt_fit* fit, const double* data, size_t n, double* statistic,
                            double* pvalue);

/* Runs the batch pipeline. `days` ("A..B", may be NULL) restricts trading
 * days; jobs = 0 keeps the config value. *exit_code receives 0 on success
 * and 1 on a fatal ingestion error or when no fit succeeded. */
LT_API lt_status lt_run_pipeline(const char* config_path, const char* days, unsigned jobs,
                                 int* exit_code);

typedef struct lt_simstudy_options {
  uint64_t seed;
  int has_seed;
  size_t replicates;
  int has_replicates;
  const char* out_dir; /* NULL: "simstudy_out" */
  unsigned jobs;       /* 0: hardware concurrency */
} lt_simstudy_options;

/* study: "gev_compare", "gpd_compare" or "ks_case". *all_passed reports the
 * qualitative anchor checks. */
LT_API lt_status lt_run_simstudy(const char* study, const lt_simstudy_options* options,
                                 int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* LOBTAIL_LOBTAIL_H */
