#include "income_kinetics/income_kinetics.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "income_kinetics/calibration.hpp"
#include "income_kinetics/config.hpp"
#include "income_kinetics/curve_io.hpp"
#include "income_kinetics/engine.hpp"
#include "income_kinetics/error.hpp"
#include "income_kinetics/exogenous.hpp"
#include "income_kinetics/manifest.hpp"
#include "income_kinetics/model.hpp"
#include "income_kinetics/panel_io.hpp"
#include "income_kinetics/statistics.hpp"
#include "income_kinetics/svg.hpp"
#include "income_kinetics/text_io.hpp"

using namespace ikin;

struct ik_config {
  config::RunConfig run;
};
struct ik_series {
  exogenous::ExogenousSeries series;
};
struct ik_panel {
  engine::SimulationPanel panel;
};
struct ik_curve {
  stats::AgeCurve curve;
  std::string metadata;
};
struct ik_microdata {
  stats::MicrodataSet data;
};
struct ik_comparison {
  stats::Comparison comparison;
};
struct ik_problem {
  calib::CalibrationProblem problem;
};
struct ik_fit_result {
  calib::CalibrationResult result;
  std::string text;
  std::string trace;
};
struct ik_manifest {
  manifest::Manifest m;
  std::string hash, header, rendered;
};

namespace {

thread_local std::string last_error;

ik_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return IK_ERR_DOMAIN;
    case ErrorKind::parse: return IK_ERR_PARSE;
    case ErrorKind::validation: return IK_ERR_VALIDATION;
    case ErrorKind::coverage: return IK_ERR_COVERAGE;
    case ErrorKind::io: return IK_ERR_IO;
    case ErrorKind::alignment: return IK_ERR_ALIGNMENT;
    case ErrorKind::internal: return IK_ERR_INTERNAL;
  }
  return IK_ERR_INTERNAL;
}

ik_status set_error(ik_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

struct ArgumentError {
  const char* what;
};

// Runs `body`, translating exceptions into status codes.
template <typename F>
ik_status checked(F&& body) {
  try {
    body();
    return IK_OK;
  } catch (const ArgumentError& e) {
    return set_error(IK_ERR_ARGUMENT, e.what);
  } catch (const Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(IK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IK_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(IK_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError{what};
}

std::vector<std::string> header_lines(const char* header) {
  std::vector<std::string> lines;
  if (!header) return lines;
  for (const auto part : text::split(header, '\n'))
    if (!part.empty()) lines.emplace_back(part);
  return lines;
}

stats::CurveKind to_kind(ik_curve_kind kind) {
  switch (kind) {
    case IK_MEAN_INCOME: return stats::CurveKind::mean_income;
    case IK_PARETO_SHARE: return stats::CurveKind::pareto_share;
    case IK_RATIO: return stats::CurveKind::ratio;
  }
  fail(ErrorKind::validation, "unknown curve kind code");
}

ik_curve* make_curve(stats::AgeCurve c) {
  auto* out = new ik_curve{std::move(c), {}};
  out->metadata = curve_io::metadata_line(out->curve);
  return out;
}

const engine::CohortSnapshot& cohort_at(const engine::SimulationPanel& panel, int year, int experience) {
  const auto& slice = panel.year(year);
  require(experience >= 0 && static_cast<std::size_t>(experience) < slice.cohorts.size(), ErrorKind::domain,
          "experience " + std::to_string(experience) + " not present in " + std::to_string(year));
  return slice.cohorts[static_cast<std::size_t>(experience)];
}

}  // namespace

extern "C" {

const char* ik_version(void) { return manifest::version(); }

const char* ik_last_error(void) { return last_error.c_str(); }

const char* ik_status_name(ik_status status) {
  switch (status) {
    case IK_OK: return "ok";
    case IK_ERR_DOMAIN: return "domain";
    case IK_ERR_PARSE: return "parse";
    case IK_ERR_VALIDATION: return "validation";
    case IK_ERR_COVERAGE: return "coverage";
    case IK_ERR_IO: return "io";
    case IK_ERR_ALIGNMENT: return "alignment";
    case IK_ERR_INTERNAL: return "internal";
    case IK_ERR_ARGUMENT: return "argument";
  }
  return "unknown";
}

// ---- configuration

ik_status ik_config_load(const char* path, ik_config** out) {
  return checked([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = new ik_config{config::load_run_config(path)};
  });
}

ik_status ik_config_create_default(ik_config** out) {
  return checked([&] {
    need(out, "out is NULL");
    auto* c = new ik_config{};
    auto male = model::default_group();
    male.name = "male";
    auto female = model::female_group();
    female.name = "female";
    c->run.groups = {male, female};
    *out = c;
  });
}

void ik_config_free(ik_config* config) { delete config; }

size_t ik_config_group_count(const ik_config* config) { return config ? config->run.groups.size() : 0; }

const char* ik_config_group_name(const ik_config* config, size_t index) {
  if (!config || index >= config->run.groups.size()) return nullptr;
  return config->run.groups[index].name.c_str();
}

ik_status ik_config_years(const ik_config* config, int* base_year, int* first_year, int* last_year) {
  return checked([&] {
    need(config, "config is NULL");
    if (base_year) *base_year = config->run.base_year;
    if (first_year) *first_year = config->run.first_year;
    if (last_year) *last_year = config->run.last_year;
  });
}

ik_status ik_config_set_years(ik_config* config, int base_year, int first_year, int last_year) {
  return checked([&] {
    need(config, "config is NULL");
    require(first_year <= last_year, ErrorKind::validation, "first_year exceeds last_year");
    config->run.base_year = base_year;
    config->run.first_year = first_year;
    config->run.last_year = last_year;
  });
}

ik_status ik_config_set(ik_config* config, const char* group, const char* key, const char* value) {
  return checked([&] {
    need(config, "config is NULL");
    need(group, "group is NULL");
    need(key, "key is NULL");
    need(value, "value is NULL");
    for (auto& g : config->run.groups)
      if (g.name == group) return config::apply_group_setting(g, key, value, std::string("group '") + group + "'");
    config->run.group(group);  // throws with the list of groups
  });
}

// ---- exogenous series

ik_status ik_series_load(const char* gdp_path, const char* population_path, const char* extension_path,
                         int splice_year, int base_year, ik_series** out) {
  return checked([&] {
    need(gdp_path, "gdp path is NULL");
    need(out, "out is NULL");
    auto table = exogenous::load_series(gdp_path);
    std::string note = std::filesystem::path(gdp_path).filename().string();
    if (population_path) {
      table = exogenous::working_age_correction(table, exogenous::load_population(population_path));
      note += " per working-age capita (" + std::filesystem::path(population_path).filename().string() + ")";
    }
    if (extension_path) {
      table = exogenous::splice_series(table, exogenous::load_series(extension_path), splice_year);
      note += ", extended by " + std::filesystem::path(extension_path).filename().string() + " at " +
              std::to_string(splice_year);
    }
    *out = new ik_series{exogenous::normalize_to_base(table, base_year, note)};
  });
}

ik_status ik_series_constant_growth(int base_year, int first_year, int last_year, double annual_growth,
                                    ik_series** out) {
  return checked([&] {
    need(out, "out is NULL");
    *out = new ik_series{exogenous::constant_growth(base_year, first_year, last_year, annual_growth)};
  });
}

void ik_series_free(ik_series* series) { delete series; }

ik_status ik_series_range(const ik_series* series, int* first_year, int* last_year) {
  return checked([&] {
    need(series, "series is NULL");
    if (first_year) *first_year = series->series.first_year();
    if (last_year) *last_year = series->series.last_year();
  });
}

ik_status ik_series_value(const ik_series* series, int year, double* value) {
  return checked([&] {
    need(series, "series is NULL");
    need(value, "value is NULL");
    *value = series->series.at(year);
  });
}

// ---- simulation

ik_status ik_simulate(const ik_config* config, const char* group, const ik_series* series, int first_year,
                      int last_year, int threads, const int* report_years, size_t report_count, ik_panel** out) {
  return checked([&] {
    need(config, "config is NULL");
    need(group, "group is NULL");
    need(series, "series is NULL");
    need(out, "out is NULL");
    engine::SimulationOptions options;
    options.threads = threads;
    if (report_years) options.report_years.assign(report_years, report_years + report_count);
    *out = new ik_panel{
        engine::run_simulation(config->run.group(group), series->series, first_year, last_year, options)};
  });
}

void ik_panel_free(ik_panel* panel) { delete panel; }

ik_status ik_panel_read(const char* path, ik_panel** out) {
  return checked([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = new ik_panel{panel_io::read(path)};
  });
}

ik_status ik_panel_write(const ik_panel* panel, const char* path, const char* header, const int* years,
                         size_t year_count) {
  return checked([&] {
    need(panel, "panel is NULL");
    need(path, "path is NULL");
    std::vector<int> selected;
    if (years) selected.assign(years, years + year_count);
    panel_io::write(path, panel->panel, header_lines(header), selected);
  });
}

const char* ik_panel_group(const ik_panel* panel) { return panel ? panel->panel.info().group.c_str() : nullptr; }

size_t ik_panel_year_count(const ik_panel* panel) { return panel ? panel->panel.years().size() : 0; }

ik_status ik_panel_year(const ik_panel* panel, size_t index, int* year) {
  return checked([&] {
    need(panel, "panel is NULL");
    need(year, "year is NULL");
    if (index >= panel->panel.years().size()) throw ArgumentError{"year index out of range"};
    *year = panel->panel.years()[index].calendar_year;
  });
}

ik_status ik_panel_threshold(const ik_panel* panel, int year, double* threshold) {
  return checked([&] {
    need(panel, "panel is NULL");
    need(threshold, "threshold is NULL");
    *threshold = panel->panel.year(year).threshold;
  });
}

ik_status ik_panel_max_experience(const ik_panel* panel, int year, int* max_experience) {
  return checked([&] {
    need(panel, "panel is NULL");
    need(max_experience, "max_experience is NULL");
    *max_experience = static_cast<int>(panel->panel.year(year).cohorts.size()) - 1;
  });
}

ik_status ik_panel_cell(const ik_panel* panel, int year, int experience, int i, int j, double* m_tilde,
                        ik_regime* regime) {
  return checked([&] {
    need(panel, "panel is NULL");
    if (i < 1 || i > model::kGridSide || j < 1 || j > model::kGridSide)
      throw ArgumentError{"grid indices must lie in 1..29"};
    const auto& snap = cohort_at(panel->panel, year, experience);
    const auto k = model::cell_index(i - 1, j - 1);
    if (m_tilde) *m_tilde = snap.m_tilde[k];
    if (regime) *regime = static_cast<ik_regime>(snap.regime[k]);
  });
}

ik_status ik_panel_mass(const ik_panel* panel, int year, int age, double* tail_weight, double* below_weight,
                        double* cohort_weight) {
  return checked([&] {
    need(panel, "panel is NULL");
    for (const auto& a : engine::super_critical_mass(panel->panel, year)) {
      if (a.age != age) continue;
      if (tail_weight) *tail_weight = a.tail_weight;
      if (below_weight) *below_weight = a.below_weight;
      if (cohort_weight) *cohort_weight = a.cohort_weight;
      return;
    }
    fail(ErrorKind::domain, "age " + std::to_string(age) + " not present in " + std::to_string(year));
  });
}

// ---- curves

ik_status ik_curve_kind_parse(const char* text, ik_curve_kind* kind) {
  return checked([&] {
    need(text, "text is NULL");
    need(kind, "kind is NULL");
    *kind = static_cast<ik_curve_kind>(stats::curve_kind_from_string(text));
  });
}

ik_status ik_curve_from_panel(const ik_panel* panel, int year, ik_curve_kind kind, const double* threshold,
                              ik_curve** out) {
  return checked([&] {
    need(panel, "panel is NULL");
    need(out, "out is NULL");
    switch (to_kind(kind)) {
      case stats::CurveKind::mean_income: *out = make_curve(stats::mean_income_by_age(panel->panel, year)); break;
      case stats::CurveKind::pareto_share:
        *out = make_curve(stats::pareto_share_by_age(panel->panel, year,
                                                     threshold ? std::optional<double>(*threshold) : std::nullopt));
        break;
      case stats::CurveKind::ratio:
        fail(ErrorKind::validation, "ratio curves need two groups; build them with ik_curve_ratio");
    }
  });
}

ik_status ik_curve_create(int year, ik_curve_kind kind, const char* group, const int* ages, const double* values,
                          size_t count, ik_curve** out) {
  return checked([&] {
    need(out, "out is NULL");
    if (count > 0) {
      need(ages, "ages is NULL");
      need(values, "values is NULL");
    }
    stats::AgeCurve c;
    c.year = year;
    c.kind = to_kind(kind);
    c.group = group ? group : "";
    c.provenance = "external";
    for (size_t k = 0; k < count; ++k) {
      require(k == 0 || ages[k] > ages[k - 1], ErrorKind::validation, "ages must increase");
      c.points.push_back({ages[k], values[k]});
    }
    *out = make_curve(std::move(c));
  });
}

void ik_curve_free(ik_curve* curve) { delete curve; }

ik_status ik_curve_smooth(const ik_curve* curve, int window, ik_curve** out) {
  return checked([&] {
    need(curve, "curve is NULL");
    need(out, "out is NULL");
    *out = make_curve(stats::moving_average(curve->curve, window));
  });
}

ik_status ik_curve_normalize(const ik_curve* curve, ik_curve** out) {
  return checked([&] {
    need(curve, "curve is NULL");
    need(out, "out is NULL");
    *out = make_curve(stats::normalize_to_peak(curve->curve));
  });
}

ik_status ik_curve_ratio(const ik_curve* numerator, const ik_curve* denominator, ik_curve** out) {
  return checked([&] {
    need(numerator, "numerator is NULL");
    need(denominator, "denominator is NULL");
    need(out, "out is NULL");
    *out = make_curve(stats::group_ratio(numerator->curve, denominator->curve));
  });
}

ik_status ik_curve_read(const char* path, ik_curve** out) {
  return checked([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = make_curve(curve_io::read(path));
  });
}

ik_status ik_curve_write(const ik_curve* curve, const char* path, const char* header) {
  return checked([&] {
    need(curve, "curve is NULL");
    need(path, "path is NULL");
    curve_io::write(path, curve->curve, header_lines(header));
  });
}

size_t ik_curve_size(const ik_curve* curve) { return curve ? curve->curve.points.size() : 0; }

ik_status ik_curve_point(const ik_curve* curve, size_t index, int* age, double* value) {
  return checked([&] {
    need(curve, "curve is NULL");
    if (index >= curve->curve.points.size()) throw ArgumentError{"point index out of range"};
    if (age) *age = curve->curve.points[index].age;
    if (value) *value = curve->curve.points[index].value;
  });
}

int ik_curve_year(const ik_curve* curve) { return curve ? curve->curve.year : 0; }

ik_curve_kind ik_curve_get_kind(const ik_curve* curve) {
  return curve ? static_cast<ik_curve_kind>(curve->curve.kind) : IK_MEAN_INCOME;
}

const char* ik_curve_group(const ik_curve* curve) { return curve ? curve->curve.group.c_str() : nullptr; }

int ik_curve_window(const ik_curve* curve) { return curve ? curve->curve.smoothing_window : 0; }

int ik_curve_is_normalized(const ik_curve* curve) { return curve && curve->curve.normalized ? 1 : 0; }

const char* ik_curve_metadata(const ik_curve* curve) { return curve ? curve->metadata.c_str() : nullptr; }

size_t ik_curve_flag_count(const ik_curve* curve) { return curve ? curve->curve.flags.size() : 0; }

const char* ik_curve_flag(const ik_curve* curve, size_t index) {
  if (!curve || index >= curve->curve.flags.size()) return nullptr;
  return curve->curve.flags[index].c_str();
}

ik_status ik_svg_write(const ik_curve* const* curves, const char* const* labels, size_t count, const char* title,
                       const char* y_label, const char* path) {
  return checked([&] {
    need(path, "path is NULL");
    if (count > 0) need(curves, "curves is NULL");
    std::vector<svg::Series> series;
    for (size_t k = 0; k < count; ++k) {
      need(curves[k], "curve is NULL");
      series.push_back({labels && labels[k] ? labels[k] : curves[k]->curve.group, curves[k]->curve.points});
    }
    svg::write(path, series, title ? title : "", y_label ? y_label : "");
  });
}

// ---- microdata

ik_status ik_microdata_load(const char* path, ik_microdata** out) {
  return checked([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = new ik_microdata{stats::ingest_microdata(path)};
  });
}

void ik_microdata_free(ik_microdata* data) { delete data; }

size_t ik_microdata_record_count(const ik_microdata* data) { return data ? data->data.records.size() : 0; }

size_t ik_microdata_rejected_count(const ik_microdata* data) { return data ? data->data.rejected : 0; }

size_t ik_microdata_warning_count(const ik_microdata* data) { return data ? data->data.warnings.size() : 0; }

const char* ik_microdata_warning(const ik_microdata* data, size_t index) {
  if (!data || index >= data->data.warnings.size()) return nullptr;
  return data->data.warnings[index].c_str();
}

ik_status ik_curve_from_microdata(const ik_microdata* data, int year, const char* filter, ik_curve_kind kind,
                                  const double* threshold, ik_curve** out) {
  return checked([&] {
    need(data, "data is NULL");
    need(out, "out is NULL");
    const std::string label = filter ? filter : "all";
    const auto sample = stats::sample_from_microdata(data->data, year, stats::GroupFilter::parse(label), label);
    switch (to_kind(kind)) {
      case stats::CurveKind::mean_income: *out = make_curve(stats::mean_income_by_age(sample)); break;
      case stats::CurveKind::pareto_share:
        require(threshold != nullptr, ErrorKind::validation, "pareto_share from microdata needs a threshold");
        *out = make_curve(stats::pareto_share_by_age(sample, *threshold));
        break;
      case stats::CurveKind::ratio:
        fail(ErrorKind::validation, "ratio curves need two groups; build them with ik_curve_ratio");
    }
  });
}

// ---- comparison

ik_status ik_compare(const ik_curve* model, const ik_curve* empirical, ik_comparison** out) {
  return checked([&] {
    need(model, "model curve is NULL");
    need(empirical, "empirical curve is NULL");
    need(out, "out is NULL");
    *out = new ik_comparison{stats::compare_curves(model->curve, empirical->curve)};
  });
}

void ik_comparison_free(ik_comparison* comparison) { delete comparison; }

size_t ik_comparison_size(const ik_comparison* comparison) {
  return comparison ? comparison->comparison.rows.size() : 0;
}

ik_status ik_comparison_row(const ik_comparison* comparison, size_t index, int* age, double* model, double* empirical,
                            double* residual) {
  return checked([&] {
    need(comparison, "comparison is NULL");
    if (index >= comparison->comparison.rows.size()) throw ArgumentError{"row index out of range"};
    const auto& r = comparison->comparison.rows[index];
    if (age) *age = r.age;
    if (model) *model = r.model;
    if (empirical) *empirical = r.empirical;
    if (residual) *residual = r.residual;
  });
}

ik_status ik_comparison_summary(const ik_comparison* comparison, double* max_abs, double* rms, double* ssr) {
  return checked([&] {
    need(comparison, "comparison is NULL");
    if (max_abs) *max_abs = comparison->comparison.max_abs;
    if (rms) *rms = comparison->comparison.rms;
    if (ssr) *ssr = comparison->comparison.ssr;
  });
}

// ---- calibration

ik_status ik_problem_load(const char* path, const ik_config* config, ik_problem** out) {
  return checked([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = new ik_problem{calib::load_problem(path, config ? &config->run : nullptr)};
  });
}

void ik_problem_free(ik_problem* problem) { delete problem; }

size_t ik_problem_parameter_count(const ik_problem* problem) {
  return problem ? problem->problem.parameters.size() : 0;
}

const char* ik_problem_parameter_name(const ik_problem* problem, size_t index) {
  if (!problem || index >= problem->problem.parameters.size()) return nullptr;
  return problem->problem.parameters[index].name.c_str();
}

ik_status ik_objective(const ik_problem* problem, const ik_series* series, const double* values, size_t count,
                       double* loss) {
  return checked([&] {
    need(problem, "problem is NULL");
    need(series, "series is NULL");
    need(loss, "loss is NULL");
    if (count > 0) need(values, "values is NULL");
    *loss = calib::objective(std::vector<double>(values, values + count), problem->problem, series->series);
  });
}

ik_status ik_fit(const ik_problem* problem, const ik_series* series, size_t budget, unsigned seed,
                 ik_fit_observer observer, void* user_data, ik_fit_result** out) {
  return checked([&] {
    need(problem, "problem is NULL");
    need(series, "series is NULL");
    need(out, "out is NULL");
    calib::FitOptions options;
    options.budget = budget;
    options.seed = seed;
    calib::Observer watch;
    if (observer)
      watch = [&](const calib::TraceEntry& e) { observer(e.evaluation, e.loss, e.best_loss, user_data); };
    auto* r = new ik_fit_result{calib::fit(problem->problem, series->series, options, watch), {}, {}};
    r->text = calib::result_text(problem->problem, r->result);
    r->trace = calib::trace_csv(problem->problem, r->result);
    *out = r;
  });
}

void ik_fit_result_free(ik_fit_result* result) { delete result; }

ik_status ik_fit_result_value(const ik_fit_result* result, size_t index, double* value) {
  return checked([&] {
    need(result, "result is NULL");
    need(value, "value is NULL");
    if (index >= result->result.fitted.size()) throw ArgumentError{"parameter index out of range"};
    *value = result->result.fitted[index];
  });
}

double ik_fit_result_loss(const ik_fit_result* result) { return result ? result->result.loss : 0.0; }

int ik_fit_result_converged(const ik_fit_result* result) { return result && result->result.converged ? 1 : 0; }

size_t ik_fit_result_evaluations(const ik_fit_result* result) { return result ? result->result.evaluations : 0; }

const char* ik_fit_result_reason(const ik_fit_result* result) {
  return result ? result->result.reason.c_str() : nullptr;
}

const char* ik_fit_result_text(const ik_fit_result* result) { return result ? result->text.c_str() : nullptr; }

const char* ik_fit_result_trace(const ik_fit_result* result) { return result ? result->trace.c_str() : nullptr; }

// ---- grid

ik_status ik_grid_info(int* side, size_t* cell_count, double* min_capacity, double* max_capacity) {
  return checked([&] {
    const auto grid = model::build_capacity_grid();
    if (side) *side = model::kGridSide;
    if (cell_count) *cell_count = grid.capacities.size();
    if (min_capacity) *min_capacity = grid.min_capacity();
    if (max_capacity) *max_capacity = grid.max_capacity();
  });
}

ik_status ik_grid_eligible(double threshold, double* fraction, size_t* count) {
  return checked([&] {
    const auto grid = model::build_capacity_grid();
    const double f = model::eligible_fraction(grid, threshold);
    if (fraction) *fraction = f;
    if (count) *count = static_cast<size_t>(f * model::kCellCount + 0.5);
  });
}

// ---- manifests

ik_status ik_manifest_create(const char* command, ik_manifest** out) {
  return checked([&] {
    need(command, "command is NULL");
    need(out, "out is NULL");
    auto* m = new ik_manifest{};
    m->m.command = command;
    *out = m;
  });
}

void ik_manifest_free(ik_manifest* manifest) { delete manifest; }

ik_status ik_manifest_add_argument(ik_manifest* manifest, const char* argument) {
  return checked([&] {
    need(manifest, "manifest is NULL");
    need(argument, "argument is NULL");
    manifest->m.arguments.emplace_back(argument);
  });
}

ik_status ik_manifest_add_input(ik_manifest* manifest, const char* path) {
  return checked([&] {
    need(manifest, "manifest is NULL");
    need(path, "path is NULL");
    manifest->m.inputs.emplace_back(path);
  });
}

ik_status ik_manifest_add_output(ik_manifest* manifest, const char* name) {
  return checked([&] {
    need(manifest, "manifest is NULL");
    need(name, "name is NULL");
    manifest->m.outputs.emplace_back(name);
  });
}

const char* ik_manifest_hash(ik_manifest* manifest) {
  const char* result = nullptr;
  checked([&] {
    need(manifest, "manifest is NULL");
    manifest->hash = manifest->m.hash();
    result = manifest->hash.c_str();
  });
  return result;
}

const char* ik_manifest_header(ik_manifest* manifest) {
  const char* result = nullptr;
  checked([&] {
    need(manifest, "manifest is NULL");
    manifest->header = manifest->m.header_line();
    result = manifest->header.c_str();
  });
  return result;
}

const char* ik_manifest_render(ik_manifest* manifest) {
  const char* result = nullptr;
  checked([&] {
    need(manifest, "manifest is NULL");
    manifest->rendered = manifest->m.render();
    result = manifest->rendered.c_str();
  });
  return result;
}

ik_status ik_write_text(const char* path, const char* text) {
  return checked([&] {
    need(path, "path is NULL");
    need(text, "text is NULL");
    text::write_file(path, text);
  });
}

}  // extern "C"
