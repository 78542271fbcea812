#ifndef RSQ_RSQ_H
#define RSQ_RSQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RSQ_API __declspec(dllexport)
#else
#define RSQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. The numbering matches rsq::Status. */
typedef enum {
  RSQ_OK = 0,
  RSQ_E_DOMAIN = 1,
  RSQ_E_POLE = 2,
  RSQ_E_OVERFLOW = 3,
  RSQ_E_STRIP = 4,
  RSQ_E_BUDGET = 5,
  RSQ_E_NON_FINITE = 6,
  RSQ_E_DIVERGENCE = 7,
  RSQ_E_CONTINUATION = 8,
  RSQ_E_COINCIDENT = 9,
  RSQ_E_UNKNOWN_CHECK = 10,
  RSQ_E_CONFIG = 11,
  RSQ_E_PARSE = 12,
  RSQ_E_IO = 13
} rsq_status;

typedef struct {
  double re;
  double im;
} rsq_complex;

typedef struct rsq_coupling rsq_coupling;
typedef struct rsq_quad rsq_quad;
typedef struct rsq_results rsq_results;

RSQ_API const char* rsq_version(void);
RSQ_API const char* rsq_status_name(int status);
/* Message of the last failing call on this thread; "" after a success. */
RSQ_API const char* rsq_last_error(void);

RSQ_API int rsq_coupling_new(double g, rsq_coupling** out);
RSQ_API int rsq_coupling_new_periods(double g, double w1, double w2, rsq_coupling** out);
RSQ_API void rsq_coupling_free(rsq_coupling* c);

/* Defaults: rel 1e-9, abs 1e-12, 4e6 nodes. */
RSQ_API int rsq_quad_new(rsq_quad** out);
RSQ_API int rsq_quad_set(rsq_quad* q, double rel_tol, double abs_tol, long max_nodes);
RSQ_API void rsq_quad_free(rsq_quad* q);

/* Evaluates a named function at one point.
 *   target        args
 *   K             x
 *   hatK          lambda
 *   Kg            lambda                  (needs periods)
 *   mu            a, b                    (family selects the measure)
 *   S2            z_re, z_im              (needs periods)
 *   psi_HR        lambda1, lambda2, x1, x2
 *   psi_MB        lambda1, lambda2, x1, x2
 *   psi_factored  lambda, x
 * `error` receives the quadrature error estimate (0 for closed forms). */
RSQ_API int rsq_eval(const char* target, const char* family, const rsq_coupling* c, const rsq_quad* q,
                     const double* args, size_t nargs, rsq_complex* value, double* error);
/* Number of arguments of a target, or -1 for an unknown name. */
RSQ_API int rsq_eval_arity(const char* target);
RSQ_API const char* rsq_eval_arg_name(const char* target, size_t k);

typedef struct {
  double rel_tol;
  double abs_tol;
  long max_nodes;
  int has_tolerance; /* when set, `tolerance` replaces every finite tolerance */
  double tolerance;
  uint64_t seed;
  int jobs;
} rsq_suite_config;

RSQ_API void rsq_suite_config_init(rsq_suite_config* cfg);

RSQ_API size_t rsq_check_count(void);
RSQ_API const char* rsq_check_name(size_t i);

/* names == NULL with n == 0 runs nothing; use rsq_check_name for the full list. */
RSQ_API int rsq_suite_run(const char* const* names, size_t n, const rsq_suite_config* cfg, rsq_results** out);
RSQ_API int rsq_sweep(const char* name, const double* axis, size_t n, const rsq_suite_config* cfg, rsq_results** out);

typedef struct {
  const char* check_name;
  rsq_complex lhs;
  rsq_complex rhs;
  double abs_err;
  double rel_err;
  double tolerance;
  int passed;
  double runtime_ms;
  size_t n_params;
} rsq_result_view;

RSQ_API size_t rsq_results_count(const rsq_results* r);
/* Views stay valid until rsq_results_free. */
RSQ_API int rsq_result_get(const rsq_results* r, size_t i, rsq_result_view* out);
RSQ_API const char* rsq_result_param_key(const rsq_results* r, size_t i, size_t k);
RSQ_API const char* rsq_result_param_value(const rsq_results* r, size_t i, size_t k);
RSQ_API void rsq_results_free(rsq_results* r);

#ifdef __cplusplus
}
#endif

#endif
