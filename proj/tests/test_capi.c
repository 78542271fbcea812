#include <math.h>
#include <stdio.h>
#include <string.h>

#include "rsq/rsq.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

int main(void) {
  rsq_coupling* c = NULL;
  rsq_coupling* bad = NULL;
  rsq_coupling* rel = NULL;
  rsq_quad* q = NULL;
  rsq_complex v;
  double err = -1.0;

  EXPECT(strcmp(rsq_version(), "1.0.0") == 0);
  EXPECT(strcmp(rsq_status_name(RSQ_E_POLE), "pole") == 0);

  EXPECT(rsq_coupling_new(1.0, &c) == RSQ_OK);
  EXPECT(rsq_coupling_new(-0.5, &bad) == RSQ_E_DOMAIN);
  EXPECT(bad == NULL);
  EXPECT(strlen(rsq_last_error()) > 0);
  EXPECT(rsq_coupling_new_periods(0.8, 1.0, sqrt(2.0), &rel) == RSQ_OK);
  EXPECT(rsq_quad_new(&q) == RSQ_OK);
  EXPECT(rsq_quad_set(q, 1e-10, 1e-13, 4000000) == RSQ_OK);
  EXPECT(rsq_quad_set(q, -1.0, 1e-13, 4000000) == RSQ_E_DOMAIN);

  {
    const double x = 0.0;
    EXPECT(rsq_eval("K", "hyperbolic", c, q, &x, 1, &v, &err) == RSQ_OK);
    EXPECT(v.re == 1.0 && v.im == 0.0 && err == 0.0);
    EXPECT(strcmp(rsq_last_error(), "") == 0);
  }
  {
    /* S(w1+w2 | w1, w2) is a pole */
    const double z[2] = {1.0 + sqrt(2.0), 0.0};
    EXPECT(rsq_eval("S2", "relativistic", rel, q, z, 2, &v, &err) == RSQ_E_POLE);
  }
  {
    const double sp[4] = {0.35, 0.1, 0.15, 0.6};
    rsq_complex hr, mb;
    EXPECT(rsq_eval("psi_HR", "hyperbolic", c, q, sp, 4, &hr, &err) == RSQ_OK);
    EXPECT(rsq_eval("psi_MB", "gamma", c, q, sp, 4, &mb, &err) == RSQ_OK);
    EXPECT(hypot(hr.re - mb.re, hr.im - mb.im) < 1e-7);
  }
  {
    const double x = 0.0;
    EXPECT(rsq_eval("nope", "hyperbolic", c, q, &x, 1, &v, &err) == RSQ_E_CONFIG);
    EXPECT(rsq_eval("K", "hyperbolic", c, q, &x, 2, &v, &err) == RSQ_E_CONFIG);
    EXPECT(rsq_eval("mu", "bogus", c, q, &x, 0, &v, &err) == RSQ_E_CONFIG);
    EXPECT(rsq_eval_arity("psi_factored") == 2);
    EXPECT(rsq_eval_arity("nope") == -1);
    EXPECT(strcmp(rsq_eval_arg_name("S2", 1), "z_im") == 0);
    EXPECT(rsq_eval_arg_name("S2", 2) == NULL);
  }

  {
    rsq_suite_config cfg;
    rsq_results* rs = NULL;
    rsq_result_view view;
    const char* names[2] = {"beta.hyperbolic", "orthogonality.gamma"};
    const char* unknown[1] = {"no.such.check"};
    size_t i, k, found = 0;

    rsq_suite_config_init(&cfg);
    EXPECT(cfg.jobs == 1 && cfg.has_tolerance == 0);
    EXPECT(rsq_check_count() > 40);
    EXPECT(rsq_check_name(rsq_check_count()) == NULL);

    EXPECT(rsq_suite_run(names, 2, &cfg, &rs) == RSQ_OK);
    EXPECT(rsq_results_count(rs) == 2);
    for (i = 0; i < rsq_results_count(rs); ++i) {
      EXPECT(rsq_result_get(rs, i, &view) == RSQ_OK);
      EXPECT(strcmp(view.check_name, names[i]) == 0);
      EXPECT(view.passed == 1);
      for (k = 0; k < view.n_params; ++k)
        if (strcmp(rsq_result_param_key(rs, i, k), "family") == 0) ++found;
    }
    EXPECT(found == 2);
    EXPECT(rsq_result_get(rs, 2, &view) == RSQ_E_DOMAIN);
    rsq_results_free(rs);

    cfg.has_tolerance = 1;
    cfg.tolerance = 1e-18;
    rs = NULL;
    EXPECT(rsq_suite_run(names, 1, &cfg, &rs) == RSQ_OK);
    EXPECT(rsq_result_get(rs, 0, &view) == RSQ_OK && view.passed == 0 && view.tolerance == 1e-18);
    rsq_results_free(rs);

    rs = NULL;
    EXPECT(rsq_suite_run(unknown, 1, &cfg, &rs) == RSQ_E_UNKNOWN_CHECK);
    EXPECT(rs == NULL);
    cfg.jobs = 0;
    EXPECT(rsq_suite_run(names, 1, &cfg, &rs) == RSQ_E_CONFIG);

    rsq_suite_config_init(&cfg);
    {
      const double axis[4] = {0.4, 0.2, 0.1, 0.05};
      EXPECT(rsq_sweep("reduction.Kg_to_hatK", axis, 4, &cfg, &rs) == RSQ_OK);
      EXPECT(rsq_results_count(rs) == 4);
      rsq_results_free(rs);
      EXPECT(rsq_sweep("beta.gamma", axis, 4, &cfg, &rs) == RSQ_E_UNKNOWN_CHECK);
      EXPECT(rsq_sweep("reduction.Kg_to_hatK", axis, 0, &cfg, &rs) == RSQ_E_DOMAIN);
    }
  }

  rsq_quad_free(q);
  rsq_coupling_free(rel);
  rsq_coupling_free(c);
  rsq_coupling_free(NULL);
  rsq_results_free(NULL);

  if (failures) {
    fprintf(stderr, "%d C API expectations failed\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
