// Command-line front end. Talks to the engine only through the C API.

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "income_kinetics/income_kinetics.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct Failure {
  int exit_code;
  std::string message;
};

void ok(ik_status status) {
  if (status == IK_OK) return;
  const int code = status == IK_ERR_INTERNAL || status == IK_ERR_ARGUMENT ? kExitInternal : kExitInput;
  throw Failure{code, std::string(ik_status_name(status)) + " error: " + ik_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<ik_config, Deleter<ik_config, ik_config_free>>;
using Series = std::unique_ptr<ik_series, Deleter<ik_series, ik_series_free>>;
using Panel = std::unique_ptr<ik_panel, Deleter<ik_panel, ik_panel_free>>;
using Curve = std::unique_ptr<ik_curve, Deleter<ik_curve, ik_curve_free>>;
using Microdata = std::unique_ptr<ik_microdata, Deleter<ik_microdata, ik_microdata_free>>;
using Comparison = std::unique_ptr<ik_comparison, Deleter<ik_comparison, ik_comparison_free>>;
using Problem = std::unique_ptr<ik_problem, Deleter<ik_problem, ik_problem_free>>;
using FitResult = std::unique_ptr<ik_fit_result, Deleter<ik_fit_result, ik_fit_result_free>>;
using Manifest = std::unique_ptr<ik_manifest, Deleter<ik_manifest, ik_manifest_free>>;

// Shortest text that reads back to the same double.
std::string number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

// Collects arguments and inputs, then stamps every output with its hash.
class Run {
 public:
  Run(const std::string& command, fs::path out) : out_(std::move(out)) {
    ik_manifest* m = nullptr;
    ok(ik_manifest_create(command.c_str(), &m));
    manifest_.reset(m);
  }

  void argument(const std::string& key, const std::string& value) {
    ok(ik_manifest_add_argument(manifest_.get(), (key + "=" + value).c_str()));
  }
  void input(const fs::path& path) {
    require_file(path);
    ok(ik_manifest_add_input(manifest_.get(), path.string().c_str()));
  }

  // Call after every argument and input is registered.
  std::string header() {
    if (header_.empty()) {
      const char* h = ik_manifest_header(manifest_.get());
      if (!h) ok(IK_ERR_IO);
      header_ = h;
      std::error_code ec;
      fs::create_directories(out_, ec);
      if (ec) throw Failure{kExitInput, "cannot create output directory " + out_.string() + ": " + ec.message()};
    }
    return header_;
  }

  fs::path output(const std::string& name) {
    ok(ik_manifest_add_output(manifest_.get(), name.c_str()));
    return out_ / name;
  }

  void write_text(const std::string& name, const std::string& body) {
    ok(ik_write_text(output(name).string().c_str(), ("# " + header() + "\n" + body).c_str()));
  }

  void finish() {
    const char* rendered = ik_manifest_render(manifest_.get());
    if (!rendered) ok(IK_ERR_IO);
    ok(ik_write_text((out_ / "manifest.txt").string().c_str(), ("# " + header() + "\n" + rendered).c_str()));
  }

  static void require_file(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw Failure{kExitInput, "input file not found: " + path.string()};
  }

 private:
  fs::path out_;
  Manifest manifest_;
  std::string header_;
};

struct SeriesArgs {
  std::string gdp;
  std::string population;
  std::string extension;
  int splice_year = 0;

  void add(CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--gdp", gdp, "Real GDP per capita file (year,value)");
    if (required) o->required();
    cmd->add_option("--population", population, "Population file (year,total,working_age) for the working-age correction");
    cmd->add_option("--extension", extension, "Older GDP series spliced before --splice-year");
    cmd->add_option("--splice-year", splice_year, "Year at which --extension joins --gdp");
  }

  void register_inputs(Run& run) const {
    run.argument("series", std::string("gdp") + (population.empty() ? "" : "+population") +
                               (extension.empty() ? "" : "+extension"));
    run.input(gdp);
    if (!population.empty()) run.input(population);
    if (!extension.empty()) {
      if (splice_year == 0) throw Failure{kExitInput, "--extension needs --splice-year"};
      run.input(extension);
      run.argument("splice_year", std::to_string(splice_year));
    }
  }

  Series load(int base_year) const {
    ik_series* s = nullptr;
    ok(ik_series_load(gdp.c_str(), population.empty() ? nullptr : population.c_str(),
                      extension.empty() ? nullptr : extension.c_str(), splice_year, base_year, &s));
    return Series(s);
  }
};

Config load_config(const std::string& path) {
  Run::require_file(path);
  ik_config* c = nullptr;
  ok(ik_config_load(path.c_str(), &c));
  return Config(c);
}

// Runs a C API call that produces a curve through its last argument.
template <typename F>
Curve make_curve(F call) {
  ik_curve* c = nullptr;
  ok(call(&c));
  return Curve(c);
}

std::string file_label(std::string text) {
  for (auto& ch : text)
    if (ch == '/') ch = '-';
    else if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') ch = '_';
  return text;
}

void write_curve(Run& run, const ik_curve* curve, const std::string& stem, bool svg) {
  const auto path = run.output(stem + ".csv");
  ok(ik_curve_write(curve, path.string().c_str(), run.header().c_str()));
  if (svg) {
    const auto svg_path = run.output(stem + ".svg");
    const char* label = ik_curve_group(curve);
    ok(ik_svg_write(&curve, &label, 1, ik_curve_metadata(curve), ik_curve_get_kind(curve) == IK_PARETO_SHARE ? "share" : "value",
                    svg_path.string().c_str()));
  }
}

// ---- simulate

struct SimulateArgs {
  std::string config;
  SeriesArgs series;
  std::string out;
  std::vector<std::string> groups;
  std::vector<int> years;
  int threads = 0;
};

int simulate(const SimulateArgs& a) {
  Run run("simulate", a.out);
  run.input(a.config);
  a.series.register_inputs(run);
  auto config = load_config(a.config);
  int base = 0, first = 0, last = 0;
  ok(ik_config_years(config.get(), &base, &first, &last));

  std::vector<std::string> groups = a.groups;
  if (groups.empty())
    for (size_t k = 0; k < ik_config_group_count(config.get()); ++k) groups.emplace_back(ik_config_group_name(config.get(), k));
  for (const auto& g : groups) run.argument("group", g);
  for (const int y : a.years) run.argument("year", std::to_string(y));

  auto series = a.series.load(base);
  const std::string header = run.header();
  for (const auto& g : groups) {
    ik_panel* p = nullptr;
    ok(ik_simulate(config.get(), g.c_str(), series.get(), first, last, a.threads, a.years.empty() ? nullptr : a.years.data(),
                   a.years.size(), &p));
    Panel panel(p);
    const auto path = run.output("panel_" + file_label(g) + ".csv");
    ok(ik_panel_write(panel.get(), path.string().c_str(), header.c_str(), nullptr, 0));
    std::cerr << "wrote " << path.string() << "\n";
  }
  run.finish();
  return 0;
}

// ---- curves

struct CurvesArgs {
  std::string panel;
  std::string versus;
  std::string microdata;
  std::string group = "all";
  std::string versus_group;
  std::string out;
  std::vector<int> years;
  std::string kind;
  std::string of = "mean_income";
  int ma = 1;
  bool normalize = false;
  std::optional<double> threshold;
  bool svg = false;
};

int curves(const CurvesArgs& a) {
  ik_curve_kind kind{};
  ok(ik_curve_kind_parse(a.kind.c_str(), &kind));
  ik_curve_kind base_kind = kind;
  if (kind == IK_RATIO) {
    ok(ik_curve_kind_parse(a.of.c_str(), &base_kind));
    if (base_kind == IK_RATIO) throw Failure{kExitInput, "--of must be mean_income or pareto_share"};
  }
  if (a.panel.empty() == a.microdata.empty()) throw Failure{kExitInput, "give exactly one of --panel or --microdata"};
  if (a.ma < 1 || a.ma % 2 == 0) throw Failure{kExitInput, "--ma must be an odd positive window"};

  Run run("curves", a.out);
  run.argument("kind", a.kind);
  if (kind == IK_RATIO) run.argument("of", a.of);
  run.argument("ma", std::to_string(a.ma));
  run.argument("normalize", a.normalize ? "true" : "false");
  if (a.threshold) run.argument("threshold", number(*a.threshold));
  for (const int y : a.years) run.argument("year", std::to_string(y));

  const double* threshold = a.threshold ? &*a.threshold : nullptr;
  std::vector<std::function<Curve(int)>> sources;
  Panel panel, versus;
  Microdata micro;
  if (!a.panel.empty()) {
    run.input(a.panel);
    ik_panel* p = nullptr;
    ok(ik_panel_read(a.panel.c_str(), &p));
    panel.reset(p);
    sources.push_back([&, threshold](int y) {
      return make_curve([&](ik_curve** out) { return ik_curve_from_panel(panel.get(), y, base_kind, threshold, out); });
    });
    if (kind == IK_RATIO) {
      if (a.versus.empty()) throw Failure{kExitInput, "--kind ratio with --panel needs --versus PANEL"};
      run.input(a.versus);
      ok(ik_panel_read(a.versus.c_str(), &p));
      versus.reset(p);
      sources.push_back([&, threshold](int y) {
        return make_curve([&](ik_curve** out) { return ik_curve_from_panel(versus.get(), y, base_kind, threshold, out); });
      });
    }
  } else {
    run.input(a.microdata);
    run.argument("group", a.group);
    ik_microdata* m = nullptr;
    ok(ik_microdata_load(a.microdata.c_str(), &m));
    micro.reset(m);
    for (size_t k = 0; k < ik_microdata_warning_count(micro.get()); ++k)
      std::cerr << "warning: " << ik_microdata_warning(micro.get(), k) << "\n";
    if (base_kind == IK_PARETO_SHARE && !threshold)
      throw Failure{kExitInput, "pareto_share from microdata needs --threshold"};
    auto from = [&, threshold](const std::string& filter) {
      return [&, threshold, filter](int y) {
        return make_curve([&](ik_curve** out) { return ik_curve_from_microdata(micro.get(), y, filter.c_str(), base_kind, threshold, out); });
      };
    };
    sources.push_back(from(a.group));
    if (kind == IK_RATIO) {
      if (a.versus_group.empty()) throw Failure{kExitInput, "--kind ratio with --microdata needs --versus-group"};
      run.argument("versus_group", a.versus_group);
      sources.push_back(from(a.versus_group));
    }
  }
  run.header();

  auto post = [&](Curve c) {
    if (a.ma > 1) c = make_curve([&](ik_curve** out) { return ik_curve_smooth(c.get(), a.ma, out); });
    if (a.normalize) c = make_curve([&](ik_curve** out) { return ik_curve_normalize(c.get(), out); });
    return c;
  };

  for (const int y : a.years) {
    Curve c;
    if (kind == IK_RATIO) {
      Curve num = post(sources[0](y));
      Curve den = post(sources[1](y));
      c = make_curve([&](ik_curve** out) { return ik_curve_ratio(num.get(), den.get(), out); });
    } else {
      c = post(sources[0](y));
    }
    const std::string stem = a.kind + "_" + file_label(ik_curve_group(c.get())) + "_" + std::to_string(y);
    if (const size_t flags = ik_curve_flag_count(c.get()))
      std::cerr << stem << ": " << flags << " flag(s) recorded in the file header\n";
    write_curve(run, c.get(), stem, a.svg);
  }
  run.finish();
  return 0;
}

// ---- compare

struct CompareArgs {
  std::string model;
  std::string empirical;
  std::string out;
};

int compare(const CompareArgs& a) {
  Run run("compare", a.out);
  run.input(a.model);
  run.input(a.empirical);
  Curve model = make_curve([&](ik_curve** out) { return ik_curve_read(a.model.c_str(), out); });
  Curve empirical = make_curve([&](ik_curve** out) { return ik_curve_read(a.empirical.c_str(), out); });
  ik_comparison* cmp = nullptr;
  ok(ik_compare(model.get(), empirical.get(), &cmp));
  Comparison comparison(cmp);

  std::string rows = "age,model,empirical,residual\n";
  for (size_t k = 0; k < ik_comparison_size(comparison.get()); ++k) {
    int age = 0;
    double m = 0, e = 0, r = 0;
    ok(ik_comparison_row(comparison.get(), k, &age, &m, &e, &r));
    rows += std::to_string(age) + "," + number(m) + "," + number(e) + "," + number(r) + "\n";
  }
  double max_abs = 0, rms = 0, ssr = 0;
  ok(ik_comparison_summary(comparison.get(), &max_abs, &rms, &ssr));
  run.write_text("residuals.csv", rows);
  run.write_text("summary.txt", "ages = " + std::to_string(ik_comparison_size(comparison.get())) +
                                    "\nmax_abs_residual = " + number(max_abs) + "\nrms_residual = " + number(rms) +
                                    "\nssr = " + number(ssr) + "\n");
  const ik_curve* curves[] = {model.get(), empirical.get()};
  const char* labels[] = {"model", "empirical"};
  ok(ik_svg_write(curves, labels, 2, ik_curve_metadata(empirical.get()), "value",
                  run.output("overlay.svg").string().c_str()));
  run.finish();
  std::cout << "max_abs_residual = " << number(max_abs) << "\nrms_residual = " << number(rms) << "\n";
  return 0;
}

// ---- calibrate

struct CalibrateArgs {
  std::string problem;
  std::string config;
  SeriesArgs series;
  std::string out;
  std::size_t budget = 200;
  unsigned seed = 0;
  std::optional<int> base_year;
};

void report_progress(size_t evaluation, double, double best, void*) {
  if (evaluation % 50 == 0) std::cerr << "evaluation " << evaluation << " best loss " << best << "\n";
}

int calibrate(const CalibrateArgs& a) {
  if (a.budget < 1) throw Failure{kExitInput, "--budget must be at least 1"};
  Run run("calibrate", a.out);
  run.input(a.problem);
  Config config;
  if (!a.config.empty()) {
    run.input(a.config);
    config = load_config(a.config);
  }
  a.series.register_inputs(run);
  run.argument("budget", std::to_string(a.budget));
  run.argument("seed", std::to_string(a.seed));

  int base = 1962;
  if (config) ok(ik_config_years(config.get(), &base, nullptr, nullptr));
  if (a.base_year) base = *a.base_year;
  run.argument("base_year", std::to_string(base));

  ik_problem* p = nullptr;
  ok(ik_problem_load(a.problem.c_str(), config.get(), &p));
  Problem problem(p);
  auto series = a.series.load(base);
  run.header();

  ik_fit_result* r = nullptr;
  ok(ik_fit(problem.get(), series.get(), a.budget, a.seed, report_progress, nullptr, &r));
  FitResult result(r);
  run.write_text("calibration.txt", ik_fit_result_text(result.get()));
  run.write_text("trace.csv", ik_fit_result_trace(result.get()));
  run.finish();
  std::cout << ik_fit_result_text(result.get());
  return 0;
}

// ---- grid-info

int grid_info(double threshold) {
  int side = 0;
  size_t cells = 0, eligible = 0;
  double lo = 0, hi = 0, fraction = 0;
  ok(ik_grid_info(&side, &cells, &lo, &hi));
  ok(ik_grid_eligible(threshold, &fraction, &eligible));
  std::cout << "side = " << side << "\ncells = " << cells << "\nmin_capacity = " << number(lo)
            << "\nmax_capacity = " << number(hi) << "\ncapacity_ratio = " << number(hi / lo)
            << "\nthreshold = " << number(threshold) << "\neligible_cells = " << eligible
            << "\neligible_fraction = " << number(fraction) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and calibration of age-dependent personal income distributions"};
  app.set_version_flag("--version", std::string("income-kinetics ") + ik_version());
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate cohort panels for each configured group");
  c_sim->add_option("--config", sim.config, "Run configuration file")->required();
  sim.series.add(c_sim, true);
  c_sim->add_option("--out", sim.out, "Output directory")->required();
  c_sim->add_option("--group", sim.groups, "Group to simulate (repeatable; default: all)");
  c_sim->add_option("--year", sim.years, "Calendar year to export (repeatable; default: all)");
  c_sim->add_option("--threads", sim.threads, "Worker threads (0: hardware, capped by INCOME_KINETICS_THREADS)");

  CurvesArgs cur;
  auto* c_cur = app.add_subcommand("curves", "Age curves from a panel export or microdata");
  c_cur->add_option("--panel", cur.panel, "Panel export");
  c_cur->add_option("--versus", cur.versus, "Second panel, denominator of --kind ratio");
  c_cur->add_option("--microdata", cur.microdata, "Microdata file");
  c_cur->add_option("--group", cur.group, "Microdata filter: all, M, F, W, B or a pair such as BF");
  c_cur->add_option("--versus-group", cur.versus_group, "Microdata filter of the ratio denominator");
  c_cur->add_option("--out", cur.out, "Output directory")->required();
  c_cur->add_option("--year", cur.years, "Calendar year (repeatable)")->required();
  c_cur->add_option("--kind", cur.kind, "mean_income | pareto_share | ratio")->required();
  c_cur->add_option("--of", cur.of, "Curve kind compared by --kind ratio");
  c_cur->add_option("--ma", cur.ma, "Centered moving-average window (odd; 1 disables)");
  c_cur->add_flag("--normalize", cur.normalize, "Divide by the curve maximum after smoothing");
  c_cur->add_option("--threshold", cur.threshold, "Income threshold for pareto_share");
  c_cur->add_flag("--svg", cur.svg, "Also write an SVG chart per curve");

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "Residuals between a model curve and an empirical curve");
  c_cmp->add_option("--model", cmp.model, "Model curve file")->required();
  c_cmp->add_option("--empirical", cmp.empirical, "Empirical curve file")->required();
  c_cmp->add_option("--out", cmp.out, "Output directory")->required();

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "Fit group parameters to target curves");
  c_cal->add_option("--problem", cal.problem, "Calibration problem file")->required();
  c_cal->add_option("--config", cal.config, "Run configuration (overrides the problem's config key)");
  cal.series.add(c_cal, true);
  c_cal->add_option("--out", cal.out, "Output directory")->required();
  c_cal->add_option("--budget", cal.budget, "Maximum objective evaluations");
  c_cal->add_option("--seed", cal.seed, "Reserved; the restart schedule is fixed");
  c_cal->add_option("--base-year", cal.base_year, "Normalization year of the GDP series");

  double threshold = 0.43;
  auto* c_grid = app.add_subcommand("grid-info", "Capacity grid facts");
  c_grid->add_option("--threshold", threshold, "Threshold as a fraction of the maximum capacity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*c_sim) return simulate(sim);
    if (*c_cur) return curves(cur);
    if (*c_cmp) return compare(cmp);
    if (*c_cal) return calibrate(cal);
    if (*c_grid) return grid_info(threshold);
  } catch (const Failure& f) {
    std::cerr << "income-kinetics: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "income-kinetics: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
