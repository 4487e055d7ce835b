#pragma once

// Closed-form pieces of the kinetic income model. Every function here is pure.
//
// Units: incomes are normalized by S_max * L_max (= 900), so the largest
// base-year asymptote of a cell is sigma_min * a_min. Time t is work
// experience in years; age = work_start_age + t.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace ikin::model {

inline constexpr int kGridSide = 29;
inline constexpr int kCellCount = kGridSide * kGridSide;  // 841
inline constexpr int kMinRelative = 2;
inline constexpr int kMaxRelative = 30;

/// Relative capability S_i = i + 2 and instrument L_j = j + 2 for zero-based i, j.
struct CapacityGrid {
  std::array<double, kGridSide> relative_capabilities{};
  std::array<double, kGridSide> relative_instruments{};
  std::array<double, kCellCount> capacities{};  // row-major: [i * 29 + j] = S_i * L_j

  double capacity(int i, int j) const { return capacities[static_cast<std::size_t>(i * kGridSide + j)]; }
  double min_capacity() const;
  double max_capacity() const;
  /// Probability mass of one (S_i, L_j) pair: (1/29) * (1/29).
  static constexpr double cell_probability() { return 1.0 / kCellCount; }
};

CapacityGrid build_capacity_grid();

constexpr std::size_t cell_index(int i, int j) { return static_cast<std::size_t>(i * kGridSide + j); }
constexpr double s_tilde(int i) { return static_cast<double>(i + kMinRelative) / kMaxRelative; }
constexpr double l_tilde(int j) { return static_cast<double>(j + kMinRelative) / kMaxRelative; }

/// Fraction of grid cells whose saturated capacity S_i*L_j reaches mp * S_max * L_max.
/// Throws Error(domain) unless 0 <= mp <= 1.
double eligible_fraction(const CapacityGrid& grid, double mp);

// ---------------------------------------------------------------------------
// Growth, decay and scaling laws

/// Normalized income of cell (s_tilde, l_tilde) after t years with constant
/// capability and instrument:
///   sigma_min * a_min * s * l * (1 - exp(-t * alpha_tilde / (a_min * l))).
double closed_form_income(double s_tilde, double l_tilde, double sigma_min, double a_min,
                          double alpha_tilde, double t);

/// Asymptote of closed_form_income as t grows without bound.
double asymptotic_income(double s_tilde, double l_tilde, double sigma_min, double a_min);

/// First-order Taylor form of the growth law, valid while alpha*t/A << 1.
double early_growth_approx(double sigma_i, double alpha, double t);

/// Years needed for a constant-coefficient cell to reach `fraction_h` of its
/// own asymptote: -(A/alpha) * ln(1 - h). Throws Error(domain) for h >= 1.
double time_to_level(double instrument, double alpha, double fraction_h);

/// x0 * sqrt(y_ratio); the common law for capability and instrument size.
double scale_with_gdp(double x0, double y_ratio);

/// Critical work experience tc0 * sqrt(Y(tau)/Y(tau0)).
double critical_age(double tc0, double y_ratio);

/// Pareto threshold mp0 * Y(tau). Linear in Y, unlike scale_with_gdp.
double pareto_threshold(double mp0, double y_tau);

/// -ln(level_a) / (age_ta - tc_now). Both times must use the same clock.
double decay_exponent(double level_a, double age_ta, double tc_now);

/// m_at_tc * exp(-(gamma_tilde / (a_min * l_tilde)) * (t - tc)) for t >= tc.
double super_critical_decay(double m_at_tc, double a_min, double gamma_tilde, double l_tilde,
                            double t, double tc);

/// -ln(level_b) / (age_tb - ts); independent of time and output.
double retirement_exponent(double level_b, double age_tb, double ts);

// ---------------------------------------------------------------------------
// Configuration types

enum class Regime : std::uint8_t { growing = 0, super_critical_decay = 1, retirement_decay = 2 };

const char* to_string(Regime regime) noexcept;
Regime regime_from_string(const std::string& text);

struct TrajectoryState {
  double s_tilde = 0.0;
  double l_tilde = 0.0;
  double m_tilde = 0.0;
  Regime regime = Regime::growing;
  // Populated once the cell leaves the growing regime.
  double onset_experience = 0.0;
  double onset_income = 0.0;
  double decay_rate = 0.0;  // per year
};

/// Piecewise-linear function of calendar year, held constant outside
/// [start_year, end_year].
struct LinearSchedule {
  double start_year = 0.0;
  double start_value = 1.0;
  double end_year = 0.0;
  double end_value = 1.0;

  static LinearSchedule constant(double value) { return {0.0, value, 0.0, value}; }
  double operator()(double calendar_year) const;
  bool is_constant() const { return start_value == end_value; }
};

/// Anchor for super-critical decay: the maximal trajectory falls to `level_a`
/// of its onset level by age `age_ta`. Not to be confused with the
/// instrument size a_min.
struct DecayAnchor {
  double level_a = 0.3;
  double age_ta = 75.0;
};

struct RetirementAnchor {
  double level_b = 0.4;
  double age_tb = 74.0;
  double ts = 64.0;  // age at which low and middle incomes start to fall
};

struct GroupConfig {
  std::string name = "all";
  double alpha_tilde = 0.08;
  double sigma_min = 1.0;
  double a_min = 1.0;
  double tc0 = 25.0;
  LinearSchedule pareto_threshold_schedule = LinearSchedule::constant(0.43);
  LinearSchedule fl_schedule = LinearSchedule::constant(1.0);
  DecayAnchor decay_anchor{};
  RetirementAnchor retirement_anchor{};
  double work_start_age = 15.0;
  double max_age = 90.0;
  double pareto_tail_exponent = 3.5;
  double persons_per_cohort = 1.0e5;

  double max_experience() const { return max_age - work_start_age; }
  double decay_anchor_experience() const { return decay_anchor.age_ta - work_start_age; }
  double retirement_experience() const { return retirement_anchor.ts - work_start_age; }

  /// Checks the static invariants and the schedule ranges over
  /// [first_year, last_year]. Throws Error(validation) naming the field.
  void validate(int first_year, int last_year) const;
};

/// Default configuration: group-independent threshold 0.43, no instrument gap.
GroupConfig default_group();

/// Female configuration: FL 0.45 (1962) -> 0.65 (2014), threshold 0.29 (1960) -> 0.39 (2014).
GroupConfig female_group();

}  // namespace ikin::model
