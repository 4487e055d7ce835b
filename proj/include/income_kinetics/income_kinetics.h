#ifndef INCOME_KINETICS_H
#define INCOME_KINETICS_H

/*
 * C interface to the income-kinetics engine.
 *
 * Objects are opaque handles created by `ik_*_load`, `ik_*_create` or an
 * operation, and released with the matching `ik_*_free` (NULL is accepted).
 * Every fallible call returns an ik_status; on failure the message is
 * available from ik_last_error() on the same thread until the next failing
 * call. Strings returned by accessors stay valid until the owning handle is
 * freed.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(IKIN_BUILDING_LIBRARY)
#define IK_API __attribute__((visibility("default")))
#else
#define IK_API
#endif

typedef enum ik_status {
  IK_OK = 0,
  IK_ERR_DOMAIN = 1,     /* argument outside the mathematical domain */
  IK_ERR_PARSE = 2,      /* malformed input file */
  IK_ERR_VALIDATION = 3, /* well-formed but invalid configuration or data */
  IK_ERR_COVERAGE = 4,   /* series does not cover the needed years */
  IK_ERR_IO = 5,         /* file cannot be read or written */
  IK_ERR_ALIGNMENT = 6,  /* curves cannot be aligned */
  IK_ERR_INTERNAL = 7,
  IK_ERR_ARGUMENT = 8    /* NULL handle or out-of-range index */
} ik_status;

typedef enum ik_curve_kind { IK_MEAN_INCOME = 0, IK_PARETO_SHARE = 1, IK_RATIO = 2 } ik_curve_kind;

typedef enum ik_regime { IK_GROWING = 0, IK_SUPER_CRITICAL_DECAY = 1, IK_RETIREMENT_DECAY = 2 } ik_regime;

typedef struct ik_config ik_config;
typedef struct ik_series ik_series;
typedef struct ik_panel ik_panel;
typedef struct ik_curve ik_curve;
typedef struct ik_microdata ik_microdata;
typedef struct ik_comparison ik_comparison;
typedef struct ik_problem ik_problem;
typedef struct ik_fit_result ik_fit_result;
typedef struct ik_manifest ik_manifest;

IK_API const char* ik_version(void);
IK_API const char* ik_last_error(void);
IK_API const char* ik_status_name(ik_status status);

/* ---- configuration ---------------------------------------------------- */

/* Loads a run configuration file. */
IK_API ik_status ik_config_load(const char* path, ik_config** out);
/* Built-in configuration: groups "male" (defaults) and "female" (female preset), years 1962..2012. */
IK_API ik_status ik_config_create_default(ik_config** out);
IK_API void ik_config_free(ik_config* config);
IK_API size_t ik_config_group_count(const ik_config* config);
IK_API const char* ik_config_group_name(const ik_config* config, size_t index);
IK_API ik_status ik_config_years(const ik_config* config, int* base_year, int* first_year, int* last_year);
IK_API ik_status ik_config_set_years(ik_config* config, int base_year, int first_year, int last_year);
/* Applies one `key = value` group setting, as in the configuration file. */
IK_API ik_status ik_config_set(ik_config* config, const char* group, const char* key, const char* value);

/* ---- exogenous series --------------------------------------------------- */

/*
 * GDP per capita from `gdp_path`, optionally corrected to working-age capita
 * with `population_path`, optionally extended backwards with
 * `extension_path` spliced at `splice_year`, then normalized to `base_year`.
 * Optional paths may be NULL.
 */
IK_API ik_status ik_series_load(const char* gdp_path, const char* population_path, const char* extension_path,
                                int splice_year, int base_year, ik_series** out);
IK_API ik_status ik_series_constant_growth(int base_year, int first_year, int last_year, double annual_growth,
                                           ik_series** out);
IK_API void ik_series_free(ik_series* series);
IK_API ik_status ik_series_range(const ik_series* series, int* first_year, int* last_year);
IK_API ik_status ik_series_value(const ik_series* series, int year, double* value);

/* ---- simulation --------------------------------------------------------- */

/*
 * Simulates one group over [first_year, last_year]. `threads` <= 0 uses the
 * hardware concurrency; INCOME_KINETICS_THREADS caps it. `report_years` may be
 * NULL to keep every year.
 */
IK_API ik_status ik_simulate(const ik_config* config, const char* group, const ik_series* series, int first_year,
                             int last_year, int threads, const int* report_years, size_t report_count,
                             ik_panel** out);
IK_API void ik_panel_free(ik_panel* panel);
IK_API ik_status ik_panel_read(const char* path, ik_panel** out);
/* `header` lines (newline separated, may be NULL) are written as comments. `years` NULL: all years. */
IK_API ik_status ik_panel_write(const ik_panel* panel, const char* path, const char* header, const int* years,
                                size_t year_count);
IK_API const char* ik_panel_group(const ik_panel* panel);
IK_API size_t ik_panel_year_count(const ik_panel* panel);
IK_API ik_status ik_panel_year(const ik_panel* panel, size_t index, int* year);
IK_API ik_status ik_panel_threshold(const ik_panel* panel, int year, double* threshold);
IK_API ik_status ik_panel_max_experience(const ik_panel* panel, int year, int* max_experience);
/* i, j are 1-based grid indices. */
IK_API ik_status ik_panel_cell(const ik_panel* panel, int year, int experience, int i, int j, double* m_tilde,
                               ik_regime* regime);
/* Persons at or above / below the threshold and the cohort total for one age. */
IK_API ik_status ik_panel_mass(const ik_panel* panel, int year, int age, double* tail_weight, double* below_weight,
                               double* cohort_weight);

/* ---- curves ------------------------------------------------------------- */

IK_API ik_status ik_curve_kind_parse(const char* text, ik_curve_kind* kind);
/* `threshold` may be NULL: pareto_share then uses the panel's own threshold. */
IK_API ik_status ik_curve_from_panel(const ik_panel* panel, int year, ik_curve_kind kind, const double* threshold,
                                     ik_curve** out);
IK_API ik_status ik_curve_create(int year, ik_curve_kind kind, const char* group, const int* ages,
                                 const double* values, size_t count, ik_curve** out);
IK_API void ik_curve_free(ik_curve* curve);
IK_API ik_status ik_curve_smooth(const ik_curve* curve, int window, ik_curve** out);
IK_API ik_status ik_curve_normalize(const ik_curve* curve, ik_curve** out);
IK_API ik_status ik_curve_ratio(const ik_curve* numerator, const ik_curve* denominator, ik_curve** out);
IK_API ik_status ik_curve_read(const char* path, ik_curve** out);
IK_API ik_status ik_curve_write(const ik_curve* curve, const char* path, const char* header);
IK_API size_t ik_curve_size(const ik_curve* curve);
IK_API ik_status ik_curve_point(const ik_curve* curve, size_t index, int* age, double* value);
IK_API int ik_curve_year(const ik_curve* curve);
IK_API ik_curve_kind ik_curve_get_kind(const ik_curve* curve);
IK_API const char* ik_curve_group(const ik_curve* curve);
IK_API int ik_curve_window(const ik_curve* curve);
IK_API int ik_curve_is_normalized(const ik_curve* curve);
/* The metadata line written to curve files, e.g. "year=1962, kind=mean_income, ...". */
IK_API const char* ik_curve_metadata(const ik_curve* curve);
IK_API size_t ik_curve_flag_count(const ik_curve* curve);
IK_API const char* ik_curve_flag(const ik_curve* curve, size_t index);

/* Line chart of `count` curves with one label each. */
IK_API ik_status ik_svg_write(const ik_curve* const* curves, const char* const* labels, size_t count,
                              const char* title, const char* y_label, const char* path);

/* ---- microdata ---------------------------------------------------------- */

/* Header row naming year, age, income, gender, race, weight in any order. */
IK_API ik_status ik_microdata_load(const char* path, ik_microdata** out);
IK_API void ik_microdata_free(ik_microdata* data);
IK_API size_t ik_microdata_record_count(const ik_microdata* data);
IK_API size_t ik_microdata_rejected_count(const ik_microdata* data);
IK_API size_t ik_microdata_warning_count(const ik_microdata* data);
IK_API const char* ik_microdata_warning(const ik_microdata* data, size_t index);
/* `filter`: all, M, F, W, B or a pair such as BF. `threshold` is required for pareto_share. */
IK_API ik_status ik_curve_from_microdata(const ik_microdata* data, int year, const char* filter, ik_curve_kind kind,
                                         const double* threshold, ik_curve** out);

/* ---- comparison --------------------------------------------------------- */

IK_API ik_status ik_compare(const ik_curve* model, const ik_curve* empirical, ik_comparison** out);
IK_API void ik_comparison_free(ik_comparison* comparison);
IK_API size_t ik_comparison_size(const ik_comparison* comparison);
IK_API ik_status ik_comparison_row(const ik_comparison* comparison, size_t index, int* age, double* model,
                                   double* empirical, double* residual);
IK_API ik_status ik_comparison_summary(const ik_comparison* comparison, double* max_abs, double* rms, double* ssr);

/* ---- calibration -------------------------------------------------------- */

/* `config` may be NULL: the problem's own `config` key or the defaults apply. */
IK_API ik_status ik_problem_load(const char* path, const ik_config* config, ik_problem** out);
IK_API void ik_problem_free(ik_problem* problem);
IK_API size_t ik_problem_parameter_count(const ik_problem* problem);
IK_API const char* ik_problem_parameter_name(const ik_problem* problem, size_t index);
IK_API ik_status ik_objective(const ik_problem* problem, const ik_series* series, const double* values, size_t count,
                              double* loss);

/* Called after every objective evaluation. */
typedef void (*ik_fit_observer)(size_t evaluation, double loss, double best_loss, void* user_data);

IK_API ik_status ik_fit(const ik_problem* problem, const ik_series* series, size_t budget, unsigned seed,
                        ik_fit_observer observer, void* user_data, ik_fit_result** out);
IK_API void ik_fit_result_free(ik_fit_result* result);
IK_API ik_status ik_fit_result_value(const ik_fit_result* result, size_t index, double* value);
IK_API double ik_fit_result_loss(const ik_fit_result* result);
IK_API int ik_fit_result_converged(const ik_fit_result* result);
IK_API size_t ik_fit_result_evaluations(const ik_fit_result* result);
IK_API const char* ik_fit_result_reason(const ik_fit_result* result);
/* Key-value summary and the evaluation trace as CSV. */
IK_API const char* ik_fit_result_text(const ik_fit_result* result);
IK_API const char* ik_fit_result_trace(const ik_fit_result* result);

/* ---- grid --------------------------------------------------------------- */

IK_API ik_status ik_grid_info(int* side, size_t* cell_count, double* min_capacity, double* max_capacity);
/* Fraction and number of cells with capacity at or above threshold * max capacity. */
IK_API ik_status ik_grid_eligible(double threshold, double* fraction, size_t* count);

/* ---- manifests ---------------------------------------------------------- */

IK_API ik_status ik_manifest_create(const char* command, ik_manifest** out);
IK_API void ik_manifest_free(ik_manifest* manifest);
IK_API ik_status ik_manifest_add_argument(ik_manifest* manifest, const char* argument);
IK_API ik_status ik_manifest_add_input(ik_manifest* manifest, const char* path);
IK_API ik_status ik_manifest_add_output(ik_manifest* manifest, const char* name);
/* Hex SHA-256 over version, command, arguments and input contents. */
IK_API const char* ik_manifest_hash(ik_manifest* manifest);
/* "income-kinetics <version> manifest=<hash>" */
IK_API const char* ik_manifest_header(ik_manifest* manifest);
IK_API const char* ik_manifest_render(ik_manifest* manifest);
IK_API ik_status ik_write_text(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif
