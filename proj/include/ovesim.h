/* ovesim — Monte Carlo benchmarking of quantum-state overlap estimation
 * strategies (tomography-tomography, tomography-projection, Schur collective
 * measurement, optical swap test, and a two-step adaptive combination).
 *
 * C API of the shared library. All functions return ove_status; on failure
 * ove_last_error() carries a thread-local description. Handles are opaque
 * and freed with their matching *_free function.
 */
#ifndef OVESIM_H
#define OVESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OVESIM_API __declspec(dllexport)
#else
#define OVESIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ove_status {
  OVE_OK = 0,
  OVE_ERR_DOMAIN = 1,            /* argument outside its mathematical domain */
  OVE_ERR_CONFIG = 2,            /* misconfigured run or campaign */
  OVE_ERR_PARSE = 3,             /* config or report text rejected */
  OVE_ERR_NO_CROSSOVER = 4,      /* variance curves do not cross on (0,1) */
  OVE_ERR_ENUMERATION_BOUND = 5, /* exact enumeration too large */
  OVE_ERR_FIT = 6,               /* least-squares fit under-determined */
  OVE_ERR_IO = 7,                /* file could not be read or written */
  OVE_ERR_INTERNAL = 8
} ove_status;

/* Human-readable name of a status code (static storage). */
OVESIM_API const char *ove_status_name(ove_status status);

/* Description of the most recent failure on this thread; empty string when
 * no failure has occurred. */
OVESIM_API const char *ove_last_error(void);

/* Frees strings returned through char** out-parameters. */
OVESIM_API void ove_string_free(char *text);

/* ---- campaign configs ------------------------------------------------- */

typedef struct ove_config ove_config;

/* Defaults: strategies tt,tp,scm,ost; c_grid 0,0.1,...,1; m_pairs 100;
 * n_copies 900; n_repeats 20; r_runs 10; kappa 11/8; gamma 0.965; eta 0.5;
 * alpha 1/30; c_t 4/11; bootstrap off. */
OVESIM_API ove_status ove_config_default(ove_config **out);
OVESIM_API ove_status ove_config_parse_file(const char *path, ove_config **out);
OVESIM_API ove_status ove_config_parse_text(const char *text, ove_config **out);
/* Applies "key = value" with the same keys and validation as config files. */
OVESIM_API ove_status ove_config_set(ove_config *config, const char *key,
                                     const char *value);
OVESIM_API ove_status ove_config_set_seed(ove_config *config, uint64_t seed);
OVESIM_API ove_status ove_config_serialize(const ove_config *config,
                                           char **out_text);
OVESIM_API void ove_config_free(ove_config *config);

/* ---- benchmark campaigns ---------------------------------------------- */

typedef struct ove_report ove_report;

OVESIM_API ove_status ove_benchmark_run(const ove_config *config,
                                        ove_report **out);
/* format: "csv" or "json". */
OVESIM_API ove_status ove_report_render(const ove_report *report,
                                        const char *format, char **out_text);
OVESIM_API ove_status ove_report_write(const ove_report *report,
                                       const char *format, const char *path);
OVESIM_API void ove_report_free(ove_report *report);

/* Least-squares fit nv(c) = alpha*c*(1-c) + beta for one strategy tag of the
 * report. */
OVESIM_API ove_status ove_report_fit(const ove_report *report,
                                     const char *strategy, double *alpha,
                                     double *beta, double *r_squared);

/* ---- closed-form theory ------------------------------------------------ */

typedef struct ove_theory_params {
  double kappa; /* scaled average tomography infidelity, > 0 */
  double gamma; /* photon indistinguishability, (0, 1] */
  double eta;   /* beam-splitter reflectivity, (0, 1) */
  long dim;     /* state dimension, >= 2 */
} ove_theory_params;

OVESIM_API void ove_theory_params_default(ove_theory_params *params);

/* Average variance v(c, n); strategy is one of "tt", "tp", "scm", "ost",
 * "scm_qudit". params may be NULL for defaults. */
OVESIM_API ove_status ove_theory_variance(const char *strategy, double c,
                                          long long n,
                                          const ove_theory_params *params,
                                          double *out);

/* Per-pair Fisher information. mc_samples/mc_seed configure the Monte Carlo
 * evaluation used for "tp" (>= 100000 samples); other strategies ignore
 * them. */
OVESIM_API ove_status ove_fisher_information(const char *strategy, double c,
                                             long long n,
                                             const ove_theory_params *params,
                                             long long mc_samples,
                                             uint64_t mc_seed, double *out);

/* Overlap where the scaled variances of strategies a and b intersect. */
OVESIM_API ove_status ove_crossover(const char *strategy_a,
                                    const char *strategy_b,
                                    const ove_theory_params *params,
                                    double *out);

/* Chebyshev copy overhead ceil(f_s(c) / (prob * epsilon^2)). */
OVESIM_API ove_status ove_copy_overhead(const char *strategy, double c,
                                        double epsilon, double prob,
                                        const ove_theory_params *params,
                                        long long *out);

/* ---- tomography calibration ------------------------------------------- */

/* Monte Carlo fit of the scaled average tomography infidelity kappa over a
 * copy-count grid (entries divisible by 3, >= 30). */
OVESIM_API ove_status ove_kappa_fit(const long long *n_grid, size_t n_grid_len,
                                    long long samples_per_point,
                                    long long repeats, uint64_t seed,
                                    double *kappa, double *std_error);

/* ---- oracle cross-checks ----------------------------------------------- */

/* Runs small-instance comparisons between the exact enumeration oracle and
 * the Monte Carlo engine. When out_text is non-NULL it receives one line per
 * comparison. *failures is the number of disagreements (0 on full agreement).
 */
OVESIM_API ove_status ove_oracle_check(const ove_config *config,
                                       char **out_text, int *failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OVESIM_H */
