#pragma once

// Cohort simulation. A cohort is the 29x29 grid of (capability, instrument)
// cells that entered work in one calendar year. Cells start at zero income and
// grow under
//
//   dM/dt = alpha_tilde * (Sigma(tau0, t) - M / A(tau0, t)),
//
// where Sigma and A follow sqrt(Y(tau)/Y(tau0)) and A also tracks the group's
// FL schedule. Growth is integrated with classical RK4 on a monthly grid.
// Cells leave the growing regime at most once:
//
//   * super-critical decay once experience reaches T_c(tau) = tc0 * sqrt(Y(tau))
//     and income is at or above the Pareto threshold;
//   * retirement decay once age reaches T_S while below the threshold.
//
// Both decay regimes are closed-form exponentials from the onset income.

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "income_kinetics/exogenous.hpp"
#include "income_kinetics/model.hpp"

namespace ikin::engine {

inline constexpr int kStepsPerYear = 12;
inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct Cohort {
  int entry_year = 0;
  int experience = 0;         // completed years of work experience
  double person_weight = 0.0;  // persons represented by each cell
  std::array<model::TrajectoryState, model::kCellCount> cells{};

  // Entry-year scales: Sigma_i(tau0) = capability_scale * s_i and
  // A_j(tau0) = instrument_scale * l_j.
  double capability_scale = 0.0;
  double instrument_scale = 0.0;
  double entry_output = 1.0;  // Y(tau0)
  double entry_fl = 1.0;      // FL(tau0)

  double critical_experience = kNever;  // T_c crossing, or kNever within the horizon
  double gamma_tilde = 0.0;             // decay exponent of the maximal trajectory
  double retirement_rate = 0.0;         // eta

  // One-year decay multipliers: retirement, and super-critical per instrument class.
  double retirement_factor = 1.0;
  std::array<double, model::kGridSide> super_critical_factor{};

  // Growing-regime income of a unit-capability cell per instrument class.
  // The growth equation is linear in Sigma, so a growing cell (i, j) holds
  // s_i * unit_growth[j]. Within a class the growing cells are i in [lo, hi).
  std::array<double, model::kGridSide> unit_growth{};
  std::array<int, model::kGridSide> growing_lo{};
  std::array<int, model::kGridSide> growing_hi{};

  const model::TrajectoryState& cell(int i, int j) const { return cells[model::cell_index(i, j)]; }
  double weight() const { return person_weight * model::kCellCount; }
};

/// First work experience t at which t >= tc0 * sqrt(Y(entry_year + t)).
/// Returns kNever if not reached within `max_experience` or the series coverage.
double critical_experience(int entry_year, double tc0, const exogenous::ExogenousSeries& series,
                           double max_experience);

/// Absolute threshold in normalized income units for a calendar time:
/// pareto_threshold(schedule(tau), Y(tau)) * sigma_min * a_min.
double income_threshold(const model::GroupConfig& group, const exogenous::ExogenousSeries& series,
                        double calendar_time);

Cohort init_cohort(int entry_year, const model::GroupConfig& group, const exogenous::ExogenousSeries& series,
                   double persons);

/// Advances the cohort by one year so that it ends in `calendar_year`.
/// Requires calendar_year == entry_year + experience + 1.
void step_cohort(Cohort& cohort, int calendar_year, const exogenous::ExogenousSeries& series,
                 const model::GroupConfig& group);

/// Growing-regime income of every cell at each monthly node of the first
/// `years` years, ignoring regime switches. Used for sub-annual checks.
struct GrowthPath {
  std::vector<double> experience;
  std::vector<std::array<double, model::kGridSide>> unit_growth;  // per node, per instrument class
};
GrowthPath integrate_growth(int entry_year, const model::GroupConfig& group,
                            const exogenous::ExogenousSeries& series, int years);

// ---------------------------------------------------------------------------
// Panels

struct CohortSnapshot {
  int entry_year = 0;
  int experience = 0;
  double person_weight = 0.0;
  std::array<double, model::kCellCount> m_tilde{};
  std::array<model::Regime, model::kCellCount> regime{};
};

struct YearSlice {
  int calendar_year = 0;
  double threshold = 0.0;                // group's own threshold in income units
  std::vector<CohortSnapshot> cohorts;   // index = experience
};

struct PanelInfo {
  std::string group;
  int base_year = 0;
  int work_start_age = 15;
  int max_age = 90;
  double tail_exponent = 3.5;
  double persons_per_cohort = 1.0e5;
};

class SimulationPanel {
 public:
  SimulationPanel() = default;
  SimulationPanel(PanelInfo info, std::vector<YearSlice> years) : info_(std::move(info)), years_(std::move(years)) {}

  const PanelInfo& info() const { return info_; }
  const std::vector<YearSlice>& years() const { return years_; }
  bool has_year(int year) const;
  /// Throws Error(coverage) if the year was not simulated.
  const YearSlice& year(int year) const;

 private:
  PanelInfo info_;
  std::vector<YearSlice> years_;
};

struct SimulationOptions {
  int threads = 0;                // 0: hardware concurrency, capped by INCOME_KINETICS_THREADS
  std::vector<int> report_years;  // empty: every year in [first_year, last_year]
};

/// Simulates every cohort alive in [first_year, last_year]; cohorts that are
/// already working in first_year are started from their entry year, so the
/// series must cover [first_year - max_experience, last_year]. Configuration
/// and coverage are validated before any stepping. Output does not depend on
/// the thread count.
SimulationPanel run_simulation(const model::GroupConfig& group, const exogenous::ExogenousSeries& series,
                               int first_year, int last_year, const SimulationOptions& options = {});

struct AgeMass {
  int age = 0;
  double mass = 0.0;           // weighted fraction at or above the threshold
  double tail_weight = 0.0;    // persons at or above the threshold
  double below_weight = 0.0;   // persons below the threshold
  double cohort_weight = 0.0;  // persons in the cohort
};

/// Weighted fraction of each age's cells whose income reaches the panel's
/// threshold for `year`.
std::vector<AgeMass> super_critical_mass(const SimulationPanel& panel, int year);

struct ParetoTail {
  double threshold = 0.0;
  double exponent = 0.0;
  double mass = 0.0;
  std::vector<double> income;       // grid points, log-spaced from threshold
  std::vector<double> ccdf;         // P(X >= income[k])
  std::vector<double> probability;  // mass in [income[k], income[k+1]); last bin is open
};

/// Discretized Pareto tail: P(X >= x) = mass * (x/threshold)^(-exponent) on
/// `sample_count` log-spaced points spanning `decades` decades. The bin
/// probabilities sum to `mass`. Throws Error(domain) for exponent <= 1.
ParetoTail synthesize_tail(double mass, double threshold, double exponent, int sample_count, double decades = 3.0);

/// Mean income above the threshold: threshold * exponent / (exponent - 1).
double tail_conditional_mean(double threshold, double exponent);

}  // namespace ikin::engine
