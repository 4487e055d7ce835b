/* Exercises the C interface from C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "income_kinetics/income_kinetics.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

#define OK(call)                                                                         \
  do {                                                                                   \
    ik_status s_ = (call);                                                               \
    if (s_ != IK_OK) {                                                                   \
      fprintf(stderr, "%s:%d: %s -> %s: %s\n", __FILE__, __LINE__, #call, ik_status_name(s_), \
              ik_last_error());                                                          \
      exit(1);                                                                           \
    }                                                                                    \
  } while (0)

static void test_grid(void) {
  int side = 0;
  size_t cells = 0, eligible = 0;
  double lo = 0, hi = 0, fraction = 0;
  OK(ik_grid_info(&side, &cells, &lo, &hi));
  EXPECT(side == 29 && cells == 841 && lo == 4.0 && hi == 900.0);
  OK(ik_grid_eligible(0.43, &fraction, &eligible));
  EXPECT(eligible == 205);
  EXPECT(fabs(fraction - 205.0 / 841.0) < 1e-15);
  EXPECT(ik_grid_eligible(1.5, &fraction, &eligible) == IK_ERR_DOMAIN);
  EXPECT(strlen(ik_last_error()) > 0);
}

static void test_errors(void) {
  ik_config* config = NULL;
  ik_series* series = NULL;
  EXPECT(ik_config_load("/nonexistent/config.ini", &config) == IK_ERR_IO);
  EXPECT(strstr(ik_last_error(), "/nonexistent/config.ini") != NULL);
  EXPECT(config == NULL);
  EXPECT(ik_config_load(NULL, &config) == IK_ERR_ARGUMENT);
  EXPECT(ik_series_range(NULL, NULL, NULL) == IK_ERR_ARGUMENT);
  OK(ik_series_constant_growth(1962, 1900, 2000, 0.02, &series));
  {
    double v = 0;
    EXPECT(ik_series_value(series, 2010, &v) == IK_ERR_COVERAGE);
  }
  ik_series_free(series);
  EXPECT(strcmp(ik_status_name(IK_ERR_PARSE), "parse") == 0);
  ik_config_free(NULL);
  ik_panel_free(NULL);
  ik_curve_free(NULL);
}

static void test_simulation(void) {
  ik_config* config = NULL;
  ik_series* series = NULL;
  ik_panel* panel = NULL;
  ik_curve *mean = NULL, *share = NULL, *smooth = NULL, *norm = NULL, *ratio = NULL;
  const int years[] = {1990};
  int first = 0, last = 0, max_exp = 0, age = 0, n_peak = 0;
  double value = 0, threshold = 0, m = 0, tail = 0, below = 0, total = 0, peak = 0;
  ik_regime regime;
  size_t k;

  OK(ik_config_create_default(&config));
  EXPECT(ik_config_group_count(config) == 2);
  EXPECT(strcmp(ik_config_group_name(config, 1), "female") == 0);
  EXPECT(ik_config_group_name(config, 9) == NULL);
  OK(ik_config_set(config, "male", "tc0", "25"));
  EXPECT(ik_config_set(config, "male", "nonsense", "1") == IK_ERR_VALIDATION);

  OK(ik_series_constant_growth(1962, 1880, 2012, 0.02, &series));
  OK(ik_series_range(series, &first, &last));
  EXPECT(first == 1880 && last == 2012);
  OK(ik_series_value(series, 1962, &value));
  EXPECT(value == 1.0);

  EXPECT(ik_simulate(config, "nobody", series, 1990, 1990, 1, years, 1, &panel) == IK_ERR_VALIDATION);
  OK(ik_simulate(config, "male", series, 1990, 1990, 1, years, 1, &panel));
  EXPECT(strcmp(ik_panel_group(panel), "male") == 0);
  EXPECT(ik_panel_year_count(panel) == 1);
  OK(ik_panel_threshold(panel, 1990, &threshold));
  EXPECT(threshold > 0.43);
  OK(ik_panel_max_experience(panel, 1990, &max_exp));
  EXPECT(max_exp == 75);
  OK(ik_panel_cell(panel, 1990, 0, 29, 29, &m, &regime));
  EXPECT(m == 0.0 && regime == IK_GROWING);
  OK(ik_panel_cell(panel, 1990, 30, 29, 29, &m, &regime));
  EXPECT(m > 0.0);
  EXPECT(ik_panel_cell(panel, 1990, 30, 30, 1, &m, &regime) == IK_ERR_ARGUMENT);
  EXPECT(ik_panel_cell(panel, 1991, 30, 1, 1, &m, &regime) == IK_ERR_COVERAGE);
  OK(ik_panel_mass(panel, 1990, 45, &tail, &below, &total));
  EXPECT(fabs(tail + below - total) < 1e-6 * total);

  OK(ik_curve_from_panel(panel, 1990, IK_MEAN_INCOME, NULL, &mean));
  OK(ik_curve_from_panel(panel, 1990, IK_PARETO_SHARE, NULL, &share));
  EXPECT(ik_curve_from_panel(panel, 1990, IK_RATIO, NULL, &ratio) == IK_ERR_VALIDATION);
  EXPECT(ik_curve_size(mean) == 76);
  EXPECT(ik_curve_year(mean) == 1990);
  EXPECT(ik_curve_get_kind(share) == IK_PARETO_SHARE);
  EXPECT(strstr(ik_curve_metadata(share), "threshold=") != NULL);
  OK(ik_curve_point(mean, 0, &age, &value));
  EXPECT(age == 15);
  EXPECT(ik_curve_point(mean, 76, &age, &value) == IK_ERR_ARGUMENT);

  OK(ik_curve_smooth(mean, 7, &smooth));
  EXPECT(ik_curve_window(smooth) == 7);
  EXPECT(ik_curve_smooth(mean, 6, &norm) == IK_ERR_DOMAIN);
  OK(ik_curve_normalize(smooth, &norm));
  EXPECT(ik_curve_is_normalized(norm));
  for (k = 0; k < ik_curve_size(norm); ++k) {
    OK(ik_curve_point(norm, k, &age, &value));
    if (value > peak) peak = value;
    if (value == 1.0) ++n_peak;
  }
  EXPECT(peak == 1.0 && n_peak >= 1);
  EXPECT(strstr(ik_curve_metadata(norm), "smoothed=MA(7), normalized=true") != NULL);

  OK(ik_curve_ratio(mean, mean, &ratio));
  for (k = 0; k < ik_curve_size(ratio); ++k) {
    OK(ik_curve_point(ratio, k, &age, &value));
    EXPECT(value == 1.0);
  }

  ik_curve_free(ratio);
  ik_curve_free(norm);
  ik_curve_free(smooth);
  ik_curve_free(share);
  ik_curve_free(mean);
  ik_panel_free(panel);
  ik_series_free(series);
  ik_config_free(config);
}

static void test_comparison(void) {
  const int ages[] = {20, 21, 22};
  const double a[] = {1.0, 2.0, 3.0};
  const double b[] = {1.1, 2.1, 3.1};
  const int far[] = {60, 61, 62};
  ik_curve *ca = NULL, *cb = NULL, *cf = NULL;
  ik_comparison* cmp = NULL;
  double max_abs = 0, rms = 0, ssr = 0, model = 0, emp = 0, res = 0;
  int age = 0;

  OK(ik_curve_create(2000, IK_MEAN_INCOME, "a", ages, a, 3, &ca));
  OK(ik_curve_create(2000, IK_MEAN_INCOME, "b", ages, b, 3, &cb));
  OK(ik_curve_create(2000, IK_MEAN_INCOME, "f", far, a, 3, &cf));
  OK(ik_compare(cb, ca, &cmp));
  EXPECT(ik_comparison_size(cmp) == 3);
  OK(ik_comparison_summary(cmp, &max_abs, &rms, &ssr));
  EXPECT(fabs(max_abs - 0.1) < 1e-12);
  OK(ik_comparison_row(cmp, 2, &age, &model, &emp, &res));
  EXPECT(age == 22 && model == 3.1 && emp == 3.0);
  EXPECT(ik_compare(ca, cf, &cmp) == IK_ERR_ALIGNMENT);
  ik_comparison_free(cmp);
  ik_curve_free(cf);
  ik_curve_free(cb);
  ik_curve_free(ca);
}

static void test_manifest(void) {
  ik_manifest *m1 = NULL, *m2 = NULL;
  char hash[65];
  OK(ik_manifest_create("simulate", &m1));
  OK(ik_manifest_add_argument(m1, "group=male"));
  OK(ik_manifest_create("simulate", &m2));
  OK(ik_manifest_add_argument(m2, "group=male"));
  EXPECT(strlen(ik_manifest_hash(m1)) == 64);
  strcpy(hash, ik_manifest_hash(m1));
  EXPECT(strcmp(hash, ik_manifest_hash(m2)) == 0);
  OK(ik_manifest_add_argument(m2, "year=1990"));
  EXPECT(strcmp(hash, ik_manifest_hash(m2)) != 0);
  EXPECT(strncmp(ik_manifest_header(m1), "income-kinetics ", 16) == 0);
  EXPECT(strstr(ik_manifest_header(m1), ik_version()) != NULL);
  EXPECT(strstr(ik_manifest_render(m1), "command = simulate") != NULL);
  OK(ik_manifest_add_input(m1, "/nonexistent/input.csv"));
  EXPECT(ik_manifest_hash(m1) == NULL);
  ik_manifest_free(m2);
  ik_manifest_free(m1);
}

int main(void) {
  EXPECT(strcmp(ik_version(), "0.1.0") == 0);
  test_grid();
  test_errors();
  test_simulation();
  test_comparison();
  test_manifest();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  puts("capi: all checks passed");
  return 0;
}
