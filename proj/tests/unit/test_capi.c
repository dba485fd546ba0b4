/* Exercises the shared library through its C header only. */
#include "nlnet/nlnet.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

int main(void) {
  nlnet_scenario* s = NULL;
  nlnet_scenario* copy = NULL;
  nlnet_result* r = NULL;
  nlnet_measures m;
  size_t n = 0;
  char model[64];
  double eta = 0.0;
  double xs[3] = {-0.5, 0.5, 1.5};
  double out[3];

  EXPECT(strlen(nlnet_version()) > 0);
  EXPECT(nlnet_scenario_builtin("roundabout", &s) == NLNET_ERR_CONFIG);
  EXPECT(strlen(nlnet_last_error()) > 0);
  EXPECT(nlnet_scenario_load("/nonexistent/scenario.json", &s) == NLNET_ERR_IO);
  EXPECT(nlnet_scenario_parse("{", &s) == NLNET_ERR_PARSE);
  EXPECT(nlnet_scenario_builtin("diamond", NULL) == NLNET_ERR_ARGUMENT);

  EXPECT(nlnet_scenario_builtin("diamond", &s) == NLNET_OK);
  EXPECT(nlnet_scenario_validate(s, &n) == NLNET_OK && n == 0);

  /* eta and dx may pass through an incompatible pair. */
  EXPECT(nlnet_scenario_set_eta(s, 0.3) == NLNET_OK);
  EXPECT(nlnet_scenario_set_dx(s, 0.03) == NLNET_OK);
  EXPECT(nlnet_scenario_get_eta(s, &eta) == NLNET_OK && eta == 0.3);
  EXPECT(nlnet_scenario_set_dx(s, 0.07) == NLNET_OK);
  EXPECT(nlnet_simulate(s, &r) == NLNET_ERR_CONFIG);
  EXPECT(nlnet_scenario_set_dx(s, 0.01) == NLNET_OK);

  EXPECT(nlnet_scenario_set_model(s, "warp") == NLNET_ERR_CONFIG);
  EXPECT(nlnet_scenario_set_model(s, "local-maxflux") == NLNET_OK);
  EXPECT(nlnet_scenario_get_model(s, model, sizeof model, &n) == NLNET_OK);
  EXPECT(strcmp(model, "local-maxflux") == 0 && n == strlen(model) + 1);
  EXPECT(nlnet_scenario_get_model(s, model, 3, &n) == NLNET_ERR_ARGUMENT);

  EXPECT(nlnet_scenario_clone(s, &copy) == NLNET_OK);
  EXPECT(nlnet_scenario_set_horizon(copy, 0.0) == NLNET_OK);
  EXPECT(nlnet_simulate(copy, &r) == NLNET_OK);
  EXPECT(nlnet_result_measures(r, &m) == NLNET_OK);
  EXPECT(m.outflow == 0.0 && m.total_travel_time == 0.0 && m.steps == 0);
  EXPECT(nlnet_result_road_count(r) == 9);
  nlnet_result_free(r);
  r = NULL;

  EXPECT(nlnet_scenario_set_horizon(s, 1.0) == NLNET_OK);
  EXPECT(nlnet_simulate(s, &r) == NLNET_OK);
  EXPECT(nlnet_result_measures(r, &m) == NLNET_OK);
  EXPECT(m.steps > 0 && m.outflow > 0.0 && m.mass_balance_error < 1e-10);
  EXPECT(fabs(m.final_time - 1.0) < 1e-12);
  EXPECT(nlnet_result_profile(r, 4, 1.0, NULL, 0, &n) == NLNET_OK && n == 100);
  EXPECT(nlnet_result_profile(r, 99, 1.0, NULL, 0, &n) != NLNET_OK);
  nlnet_result_free(r);

  EXPECT(nlnet_riemann_limit_1to1(1.0, 0.5, 0.75, 1.0, 1.0, xs, 3, out) == NLNET_OK);
  EXPECT(fabs(out[0] - 1.0) < 1e-12 && fabs(out[1] - 0.75) < 1e-12 && fabs(out[2] - 0.5) < 1e-12);
  EXPECT(nlnet_riemann_limit_1to1(-0.1, 0.5, 0.75, 1.0, 1.0, xs, 3, out) == NLNET_ERR_DOMAIN);

  nlnet_scenario_free(copy);
  nlnet_scenario_free(s);
  nlnet_scenario_free(NULL);
  nlnet_result_free(NULL);

  if (failures == 0) {
    printf("C API checks passed\n");
  }
  return failures == 0 ? 0 : 1;
}
