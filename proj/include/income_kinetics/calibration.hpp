#pragma once

// Fitting group parameters to target age curves.
//
// Problem file:
//
//   [problem]
//   config = ../config.ini      # optional; --config on the command line wins
//   group = female
//   loss = ssr                  # ssr (sum of squared residuals) | sar (sum of absolute residuals)
//
//   [parameters]
//   # name = lower, upper, initial
//   tc0 = 15, 40, 30
//
//   [targets]
//   # curve file = weight; paths are relative to this file
//   targets/mean_1962.csv = 1
//
// Each target is compared with the simulated curve of the same kind and year,
// after the smoothing window and normalization recorded in the target file.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "income_kinetics/config.hpp"
#include "income_kinetics/exogenous.hpp"
#include "income_kinetics/model.hpp"
#include "income_kinetics/statistics.hpp"

namespace ikin::calib {

/// Loss returned when a simulation cannot be run for a parameter vector.
inline constexpr double kPenaltyLoss = 1.0e10;

enum class LossNorm { ssr, sar };

const char* to_string(LossNorm norm) noexcept;
LossNorm loss_norm_from_string(const std::string& text);

/// Names accepted for free parameters.
const std::vector<std::string>& parameter_names();

struct ParameterSpec {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  double initial = 0.0;

  /// alpha_tilde, a_min and tc0 are searched on a log scale.
  bool log_scale() const;
};

struct Target {
  stats::AgeCurve curve;
  double weight = 1.0;
  std::string source;  // file the curve came from, if any
};

struct CalibrationProblem {
  model::GroupConfig base;
  std::vector<ParameterSpec> parameters;
  std::vector<Target> targets;
  LossNorm norm = LossNorm::ssr;

  /// Bounds finite and ordered, initial inside, known and distinct names,
  /// at least one target, positive weights, no ratio targets.
  void validate() const;
  /// Calendar years the objective has to simulate.
  std::vector<int> target_years() const;
};

/// Sets one named parameter. `sigma_a_product` sets sigma_min so that
/// sigma_min * a_min equals the value; it is applied after a_min.
void set_parameter(model::GroupConfig& group, const std::string& name, double value);
double get_parameter(const model::GroupConfig& group, const std::string& name);

/// Base group with every free parameter applied in a fixed order.
model::GroupConfig apply_parameters(const CalibrationProblem& problem, const std::vector<double>& values);

struct ObjectiveOptions {
  int threads = 0;
};

/// Weighted loss over targets. Values must lie within bounds (Error(domain)
/// otherwise). A simulation or curve failure yields kPenaltyLoss.
double objective(const std::vector<double>& values, const CalibrationProblem& problem,
                 const exogenous::ExogenousSeries& series, const ObjectiveOptions& options = {});

/// Simulated counterpart of every target, post-processed like the target.
std::vector<stats::AgeCurve> simulated_curves(const model::GroupConfig& group, const CalibrationProblem& problem,
                                              const exogenous::ExogenousSeries& series,
                                              const ObjectiveOptions& options = {});

struct TraceEntry {
  std::size_t evaluation = 0;  // 1-based
  std::size_t restart = 0;
  std::vector<double> values;
  double loss = 0.0;
  double best_loss = 0.0;
};

struct CalibrationResult {
  model::GroupConfig fitted_group;
  std::vector<double> fitted;
  double loss = 0.0;
  std::vector<TraceEntry> trace;
  bool converged = false;
  std::string reason;
  std::size_t evaluations = 0;
};

struct FitOptions {
  std::size_t budget = 200;
  unsigned seed = 0;      // reserved: the restart schedule is fixed
  double x_tolerance = 1e-7;   // simplex diameter in the unit cube
  double f_tolerance = 1e-12;  // relative loss spread
  int threads = 0;
};

/// Restart step sizes in the unit cube, cycled in this order.
const std::vector<double>& restart_schedule();

using Observer = std::function<void(const TraceEntry&)>;

/// Bounded Nelder-Mead on the unit cube with restarts from the best point.
/// Converged when a full restart no longer improves the best loss by more
/// than the tolerance; otherwise the budget ends the search.
CalibrationResult fit(const CalibrationProblem& problem, const exogenous::ExogenousSeries& series,
                      const FitOptions& options = {}, const Observer& observer = {});

/// Reads a problem file. The base group comes from `run` when given,
/// otherwise from the `config` key, otherwise from the default group.
CalibrationProblem load_problem(const std::filesystem::path& path, const config::RunConfig* run = nullptr);

/// Key-value summary of a result.
std::string result_text(const CalibrationProblem& problem, const CalibrationResult& result);
/// evaluation,restart,<parameter names...>,loss,best_loss rows.
std::string trace_csv(const CalibrationProblem& problem, const CalibrationResult& result);

}  // namespace ikin::calib
