#include "income_kinetics/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "income_kinetics/curve_io.hpp"
#include "income_kinetics/engine.hpp"
#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::calib {

const char* to_string(LossNorm norm) noexcept { return norm == LossNorm::ssr ? "ssr" : "sar"; }

LossNorm loss_norm_from_string(const std::string& text) {
  if (text == "ssr") return LossNorm::ssr;
  if (text == "sar") return LossNorm::sar;
  fail(ErrorKind::validation, "unknown loss norm '" + text + "'; valid norms: ssr, sar");
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{
      "alpha_tilde", "a_min",         "sigma_min", "sigma_a_product", "tc0",     "fl_start", "fl_end",
      "threshold_start", "threshold_end", "level_a", "age_ta",          "level_b", "age_tb",   "ts"};
  return names;
}

bool ParameterSpec::log_scale() const { return name == "alpha_tilde" || name == "a_min" || name == "tc0"; }

namespace {

// Application order: sigma_a_product must see the final a_min.
std::size_t order_of(const std::string& name) {
  const auto& names = parameter_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

bool two_point(const model::LinearSchedule& s) { return s.end_year > s.start_year; }

void set_endpoint(model::LinearSchedule& s, bool start, double value, const std::string& name) {
  if (start) {
    s.start_value = value;
    if (!two_point(s)) s.end_value = value;
    return;
  }
  require(two_point(s), ErrorKind::validation, name + " needs a two-point schedule in the base group");
  s.end_value = value;
}

}  // namespace

void set_parameter(model::GroupConfig& g, const std::string& name, double v) {
  if (name == "alpha_tilde") g.alpha_tilde = v;
  else if (name == "a_min") g.a_min = v;
  else if (name == "sigma_min") g.sigma_min = v;
  else if (name == "sigma_a_product") g.sigma_min = v / g.a_min;
  else if (name == "tc0") g.tc0 = v;
  else if (name == "fl_start") set_endpoint(g.fl_schedule, true, v, name);
  else if (name == "fl_end") set_endpoint(g.fl_schedule, false, v, name);
  else if (name == "threshold_start") set_endpoint(g.pareto_threshold_schedule, true, v, name);
  else if (name == "threshold_end") set_endpoint(g.pareto_threshold_schedule, false, v, name);
  else if (name == "level_a") g.decay_anchor.level_a = v;
  else if (name == "age_ta") g.decay_anchor.age_ta = v;
  else if (name == "level_b") g.retirement_anchor.level_b = v;
  else if (name == "age_tb") g.retirement_anchor.age_tb = v;
  else if (name == "ts") g.retirement_anchor.ts = v;
  else fail(ErrorKind::validation, "unknown parameter '" + name + "'");
}

double get_parameter(const model::GroupConfig& g, const std::string& name) {
  if (name == "alpha_tilde") return g.alpha_tilde;
  if (name == "a_min") return g.a_min;
  if (name == "sigma_min") return g.sigma_min;
  if (name == "sigma_a_product") return g.sigma_min * g.a_min;
  if (name == "tc0") return g.tc0;
  if (name == "fl_start") return g.fl_schedule.start_value;
  if (name == "fl_end") return g.fl_schedule.end_value;
  if (name == "threshold_start") return g.pareto_threshold_schedule.start_value;
  if (name == "threshold_end") return g.pareto_threshold_schedule.end_value;
  if (name == "level_a") return g.decay_anchor.level_a;
  if (name == "age_ta") return g.decay_anchor.age_ta;
  if (name == "level_b") return g.retirement_anchor.level_b;
  if (name == "age_tb") return g.retirement_anchor.age_tb;
  if (name == "ts") return g.retirement_anchor.ts;
  fail(ErrorKind::validation, "unknown parameter '" + name + "'");
}

void CalibrationProblem::validate() const {
  require(!parameters.empty(), ErrorKind::validation, "calibration problem has no free parameters");
  require(!targets.empty(), ErrorKind::validation, "calibration problem has no targets");
  std::set<std::string> seen;
  for (const auto& p : parameters) {
    require(order_of(p.name) < parameter_names().size(), ErrorKind::validation,
            "unknown parameter '" + p.name + "'");
    require(seen.insert(p.name).second, ErrorKind::validation, "parameter '" + p.name + "' listed twice");
    require(std::isfinite(p.lower) && std::isfinite(p.upper) && p.lower < p.upper, ErrorKind::validation,
            "parameter '" + p.name + "': bounds must be finite with lower < upper");
    require(p.initial >= p.lower && p.initial <= p.upper, ErrorKind::validation,
            "parameter '" + p.name + "': initial value outside bounds");
    require(!p.log_scale() || p.lower > 0.0, ErrorKind::validation,
            "parameter '" + p.name + "': lower bound must be positive");
  }
  for (const auto& t : targets) {
    require(t.weight > 0.0 && std::isfinite(t.weight), ErrorKind::validation, "target weights must be positive");
    require(t.curve.kind != stats::CurveKind::ratio, ErrorKind::validation,
            "ratio curves cannot be calibration targets");
    require(!t.curve.points.empty(), ErrorKind::validation, "target curve for " + std::to_string(t.curve.year) +
                                                                " has no points");
  }
}

std::vector<int> CalibrationProblem::target_years() const {
  std::set<int> years;
  for (const auto& t : targets) years.insert(t.curve.year);
  return {years.begin(), years.end()};
}

model::GroupConfig apply_parameters(const CalibrationProblem& problem, const std::vector<double>& values) {
  require(values.size() == problem.parameters.size(), ErrorKind::domain, "parameter vector has the wrong length");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return order_of(problem.parameters[a].name) < order_of(problem.parameters[b].name);
  });
  model::GroupConfig g = problem.base;
  for (const auto k : order) set_parameter(g, problem.parameters[k].name, values[k]);
  return g;
}

std::vector<stats::AgeCurve> simulated_curves(const model::GroupConfig& group, const CalibrationProblem& problem,
                                              const exogenous::ExogenousSeries& series,
                                              const ObjectiveOptions& options) {
  const auto years = problem.target_years();
  engine::SimulationOptions sim;
  sim.threads = options.threads;
  sim.report_years = years;
  const auto panel = engine::run_simulation(group, series, years.front(), years.back(), sim);

  std::vector<stats::AgeCurve> out;
  out.reserve(problem.targets.size());
  for (const auto& t : problem.targets) {
    stats::AgeCurve c = t.curve.kind == stats::CurveKind::mean_income
                            ? stats::mean_income_by_age(panel, t.curve.year)
                            : stats::pareto_share_by_age(panel, t.curve.year, t.curve.threshold);
    out.push_back(stats::post_process(c, t.curve.smoothing_window, t.curve.normalized));
  }
  return out;
}

namespace {

double target_loss(const stats::AgeCurve& simulated, const stats::AgeCurve& target, LossNorm norm) {
  double sum = 0.0;
  bool shared = false;
  for (const auto& p : target.points) {
    const auto s = simulated.value_at(p.age);
    if (!s) continue;
    shared = true;
    const double r = *s - p.value;
    sum += norm == LossNorm::ssr ? r * r : std::abs(r);
  }
  require(shared, ErrorKind::alignment, "simulated and target curves share no ages");
  return sum;
}

}  // namespace

double objective(const std::vector<double>& values, const CalibrationProblem& problem,
                 const exogenous::ExogenousSeries& series, const ObjectiveOptions& options) {
  require(values.size() == problem.parameters.size(), ErrorKind::domain, "parameter vector has the wrong length");
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto& p = problem.parameters[k];
    require(values[k] >= p.lower && values[k] <= p.upper, ErrorKind::domain,
            "parameter '" + p.name + "' = " + text::format_double(values[k]) + " is outside its bounds");
  }
  try {
    const auto group = apply_parameters(problem, values);
    const auto simulated = simulated_curves(group, problem, series, options);
    double loss = 0.0;
    for (std::size_t k = 0; k < problem.targets.size(); ++k)
      loss += problem.targets[k].weight * target_loss(simulated[k], problem.targets[k].curve, problem.norm);
    return std::isfinite(loss) ? loss : kPenaltyLoss;
  } catch (const Error&) {
    return kPenaltyLoss;
  }
}

const std::vector<double>& restart_schedule() {
  static const std::vector<double> steps{0.1, 0.05, 0.25, 0.02};
  return steps;
}

namespace {

using Point = std::vector<double>;

class Search {
 public:
  Search(const CalibrationProblem& problem, const exogenous::ExogenousSeries& series, const FitOptions& options,
         const Observer& observer)
      : problem_(problem), series_(series), options_(options), observer_(observer) {}

  double to_unit(std::size_t k, double v) const {
    const auto& p = problem_.parameters[k];
    if (p.log_scale()) return (std::log(v) - std::log(p.lower)) / (std::log(p.upper) - std::log(p.lower));
    return (v - p.lower) / (p.upper - p.lower);
  }

  double from_unit(std::size_t k, double u) const {
    const auto& p = problem_.parameters[k];
    u = std::clamp(u, 0.0, 1.0);
    double v = p.log_scale() ? std::exp(std::log(p.lower) + u * (std::log(p.upper) - std::log(p.lower)))
                             : p.lower + u * (p.upper - p.lower);
    return std::clamp(v, p.lower, p.upper);
  }

  Point values_of(const Point& u) const {
    Point v(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) v[k] = from_unit(k, u[k]);
    return v;
  }

  bool exhausted() const { return trace_.size() >= options_.budget; }

  double evaluate(const Point& u) {
    auto values = values_of(u);
    if (trace_.empty())  // exact initial values, not their unit-cube round trip
      for (std::size_t k = 0; k < values.size(); ++k) values[k] = problem_.parameters[k].initial;
    const double loss = objective(values, problem_, series_, {options_.threads});
    if (trace_.empty() || loss < best_loss_) {
      best_loss_ = loss;
      best_u_ = u;
      best_values_ = values;
    }
    TraceEntry e{trace_.size() + 1, restart_, std::move(values), loss, best_loss_};
    trace_.push_back(e);
    if (observer_) observer_(e);
    return loss;
  }

  // One Nelder-Mead run from `start`; returns false if the budget ran out.
  bool run(const Point& start, double start_loss, double step) {
    const std::size_t n = start.size();
    std::vector<Point> x{start};
    std::vector<double> f{start_loss};
    for (std::size_t k = 0; k < n && !exhausted(); ++k) {
      Point v = start;
      v[k] = v[k] + step <= 1.0 ? v[k] + step : v[k] - step;
      x.push_back(v);
      f.push_back(evaluate(v));
    }
    if (x.size() < n + 1) return false;

    std::vector<std::size_t> idx(n + 1);
    while (true) {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      const std::size_t best = idx.front(), worst = idx.back(), second = idx[n - 1];

      double diameter = 0.0;
      for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t d = 0; d < n; ++d) diameter = std::max(diameter, std::abs(x[k][d] - x[best][d]));
      const double spread = f[worst] - f[best];
      if (diameter <= options_.x_tolerance ||
          (spread <= options_.f_tolerance * std::abs(f[best]) + 1e-300 && diameter <= 1e3 * options_.x_tolerance))
        return true;
      if (exhausted()) return false;

      Point centroid(n, 0.0);
      for (std::size_t k = 0; k <= n; ++k)
        if (k != worst)
          for (std::size_t d = 0; d < n; ++d) centroid[d] += x[k][d] / static_cast<double>(n);
      auto along = [&](double t) {
        Point p(n);
        for (std::size_t d = 0; d < n; ++d) p[d] = std::clamp(centroid[d] + t * (x[worst][d] - centroid[d]), 0.0, 1.0);
        return p;
      };

      const Point xr = along(-1.0);
      const double fr = evaluate(xr);
      if (fr < f[best]) {
        if (exhausted()) {
          x[worst] = xr, f[worst] = fr;
          return false;
        }
        const Point xe = along(-2.0);
        const double fe = evaluate(xe);
        if (fe < fr) x[worst] = xe, f[worst] = fe;
        else x[worst] = xr, f[worst] = fr;
        continue;
      }
      if (fr < f[second]) {
        x[worst] = xr, f[worst] = fr;
        continue;
      }
      if (exhausted()) return false;
      const bool outside = fr < f[worst];
      const Point xc = along(outside ? -0.5 : 0.5);
      const double fc = evaluate(xc);
      if (fc < (outside ? fr : f[worst])) {
        x[worst] = xc, f[worst] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == best) continue;
        if (exhausted()) return false;
        for (std::size_t d = 0; d < n; ++d) x[k][d] = x[best][d] + 0.5 * (x[k][d] - x[best][d]);
        f[k] = evaluate(x[k]);
      }
    }
  }

  CalibrationResult solve() {
    const std::size_t n = problem_.parameters.size();
    Point start(n);
    for (std::size_t k = 0; k < n; ++k) start[k] = to_unit(k, problem_.parameters[k].initial);
    evaluate(start);

    CalibrationResult result;
    const auto& steps = restart_schedule();
    bool converged = false;
    while (!exhausted()) {
      const double before = best_loss_;
      const bool finished = run(best_u_, best_loss_, steps[restart_ % steps.size()]);
      if (!finished) break;
      const bool improved = best_loss_ < before - options_.f_tolerance * std::abs(before) - 1e-300;
      ++restart_;
      if (restart_ > 1 && !improved) {
        converged = true;
        break;
      }
    }

    result.fitted = best_values_;
    result.fitted_group = apply_parameters(problem_, result.fitted);
    result.loss = best_loss_;
    result.trace = std::move(trace_);
    result.evaluations = result.trace.size();
    result.converged = converged;
    result.reason = converged ? "converged: restart from the best point did not improve the loss"
                              : "budget of " + std::to_string(options_.budget) + " evaluations exhausted";
    return result;
  }

 private:
  const CalibrationProblem& problem_;
  const exogenous::ExogenousSeries& series_;
  const FitOptions& options_;
  const Observer& observer_;
  std::vector<TraceEntry> trace_;
  std::size_t restart_ = 0;
  double best_loss_ = std::numeric_limits<double>::infinity();
  Point best_u_;
  Point best_values_;
};

}  // namespace

CalibrationResult fit(const CalibrationProblem& problem, const exogenous::ExogenousSeries& series,
                      const FitOptions& options, const Observer& observer) {
  problem.validate();
  require(options.budget >= 1, ErrorKind::domain, "calibration budget must be at least 1");
  return Search(problem, series, options, observer).solve();
}

CalibrationProblem load_problem(const std::filesystem::path& path, const config::RunConfig* run) {
  CalibrationProblem problem;
  const auto dir = path.parent_path();
  std::string group_name;
  std::optional<std::filesystem::path> config_path;
  std::vector<config::Entry> targets;

  for (const auto& section : config::read_sections(path)) {
    const auto where = text::location(path, section.line);
    if (section.name == "problem") {
      for (const auto& e : section.entries) {
        const auto ctx = text::location(path, e.line);
        if (e.key == "group") group_name = e.value;
        else if (e.key == "config") config_path = dir / e.value;
        else if (e.key == "loss") problem.norm = loss_norm_from_string(e.value);
        else fail(ErrorKind::validation, ctx + ": unknown problem key '" + e.key + "'");
      }
    } else if (section.name == "parameters") {
      for (const auto& e : section.entries) {
        const auto ctx = text::location(path, e.line);
        const auto f = text::split(e.value, ',');
        if (f.size() != 3) fail(ErrorKind::parse, ctx + ": expected 'name = lower, upper, initial'");
        problem.parameters.push_back({e.key, text::parse_double(f[0], ctx), text::parse_double(f[1], ctx),
                                      text::parse_double(f[2], ctx)});
      }
    } else if (section.name == "targets") {
      targets = section.entries;
    } else {
      fail(ErrorKind::parse, where + ": unknown section '[" + section.name + "]'");
    }
  }

  std::optional<config::RunConfig> loaded;
  if (!run && config_path) {
    loaded = config::load_run_config(*config_path);
    run = &*loaded;
  }
  if (run) problem.base = group_name.empty() ? run->groups.front() : run->group(group_name);
  else {
    problem.base = model::default_group();
    if (!group_name.empty()) problem.base.name = group_name;
  }

  for (const auto& e : targets) {
    const auto ctx = text::location(path, e.line);
    Target t;
    t.source = e.key;
    t.weight = text::parse_double(e.value, ctx);
    t.curve = curve_io::read(dir / e.key);
    problem.targets.push_back(std::move(t));
  }
  problem.validate();
  return problem;
}

std::string result_text(const CalibrationProblem& problem, const CalibrationResult& result) {
  std::string out = "group = " + problem.base.name + "\n";
  for (std::size_t k = 0; k < problem.parameters.size(); ++k)
    out += problem.parameters[k].name + " = " + text::format_double(result.fitted[k]) + "\n";
  out += "loss = " + text::format_double(result.loss) + "\n";
  out += "loss_norm = " + std::string(to_string(problem.norm)) + "\n";
  out += "evaluations = " + std::to_string(result.evaluations) + "\n";
  out += std::string("converged = ") + (result.converged ? "true" : "false") + "\n";
  out += "reason = " + result.reason + "\n";
  return out;
}

std::string trace_csv(const CalibrationProblem& problem, const CalibrationResult& result) {
  std::string out = "evaluation,restart";
  for (const auto& p : problem.parameters) out += "," + p.name;
  out += ",loss,best_loss\n";
  for (const auto& e : result.trace) {
    out += std::to_string(e.evaluation) + "," + std::to_string(e.restart);
    for (const double v : e.values) out += "," + text::format_double(v);
    out += "," + text::format_double(e.loss) + "," + text::format_double(e.best_loss) + "\n";
  }
  return out;
}

}  // namespace ikin::calib
