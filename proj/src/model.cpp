#include "income_kinetics/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "income_kinetics/error.hpp"

namespace ikin {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::coverage: return "coverage error";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::alignment: return "alignment error";
    case ErrorKind::internal: return "internal error";
  }
  return "error";
}

}  // namespace ikin

namespace ikin::model {

namespace {

// Formats the message only on failure; these checks sit on hot paths.
void check_domain(bool ok, const char* what, double value) {
  if (ok) return;
  std::ostringstream out;
  out << what << " (got " << value << ")";
  fail(ErrorKind::domain, out.str());
}

}  // namespace

double CapacityGrid::min_capacity() const { return *std::min_element(capacities.begin(), capacities.end()); }

double CapacityGrid::max_capacity() const { return *std::max_element(capacities.begin(), capacities.end()); }

CapacityGrid build_capacity_grid() {
  CapacityGrid grid;
  for (int k = 0; k < kGridSide; ++k) {
    grid.relative_capabilities[static_cast<std::size_t>(k)] = k + kMinRelative;
    grid.relative_instruments[static_cast<std::size_t>(k)] = k + kMinRelative;
  }
  for (int i = 0; i < kGridSide; ++i)
    for (int j = 0; j < kGridSide; ++j)
      grid.capacities[cell_index(i, j)] = grid.relative_capabilities[static_cast<std::size_t>(i)] *
                                         grid.relative_instruments[static_cast<std::size_t>(j)];
  return grid;
}

double eligible_fraction(const CapacityGrid& grid, double mp) {
  check_domain(std::isfinite(mp) && mp >= 0.0 && mp <= 1.0, "eligible_fraction: threshold must lie in [0, 1]", mp);
  const double limit = mp * kMaxRelative * kMaxRelative;
  const auto count = std::count_if(grid.capacities.begin(), grid.capacities.end(),
                                   [limit](double c) { return c >= limit; });
  return static_cast<double>(count) / kCellCount;
}

double closed_form_income(double s_tilde, double l_tilde, double sigma_min, double a_min,
                          double alpha_tilde, double t) {
  check_domain(a_min > 0.0, "closed_form_income: a_min must be positive", a_min);
  check_domain(l_tilde > 0.0, "closed_form_income: l_tilde must be positive", l_tilde);
  check_domain(t >= 0.0, "closed_form_income: t must be non-negative", t);
  const double rate = alpha_tilde / (a_min * l_tilde);
  return sigma_min * a_min * s_tilde * l_tilde * -std::expm1(-rate * t);
}

double asymptotic_income(double s_tilde, double l_tilde, double sigma_min, double a_min) {
  return sigma_min * a_min * s_tilde * l_tilde;
}

double early_growth_approx(double sigma_i, double alpha, double t) { return sigma_i * alpha * t; }

double time_to_level(double instrument, double alpha, double fraction_h) {
  require(instrument > 0.0 && alpha > 0.0, ErrorKind::domain,
          "time_to_level: instrument size and alpha must be positive");
  check_domain(fraction_h < 1.0, "time_to_level: level unreachable, fraction of asymptote must be below 1", fraction_h);
  check_domain(fraction_h >= 0.0, "time_to_level: negative fraction", fraction_h);
  return -(instrument / alpha) * std::log1p(-fraction_h);
}

double scale_with_gdp(double x0, double y_ratio) {
  check_domain(y_ratio > 0.0, "scale_with_gdp: output ratio must be positive", y_ratio);
  return x0 * std::sqrt(y_ratio);
}

double critical_age(double tc0, double y_ratio) {
  check_domain(tc0 > 0.0, "critical_age: tc0 must be positive", tc0);
  return scale_with_gdp(tc0, y_ratio);
}

double pareto_threshold(double mp0, double y_tau) {
  check_domain(mp0 > 0.0 && mp0 < 1.0, "pareto_threshold: mp0 must lie in (0, 1)", mp0);
  check_domain(y_tau > 0.0, "pareto_threshold: output must be positive", y_tau);
  return mp0 * y_tau;
}

double decay_exponent(double level_a, double age_ta, double tc_now) {
  check_domain(level_a > 0.0 && level_a < 1.0, "decay_exponent: level must lie in (0, 1)", level_a);
  check_domain(age_ta > tc_now, "decay_exponent: degenerate anchor, anchor age must exceed the critical age", age_ta - tc_now);
  return -std::log(level_a) / (age_ta - tc_now);
}

double super_critical_decay(double m_at_tc, double a_min, double gamma_tilde, double l_tilde, double t,
                            double tc) {
  require(t >= tc, ErrorKind::domain, "super_critical_decay: t precedes the critical age");
  require(a_min > 0.0 && l_tilde > 0.0, ErrorKind::domain,
          "super_critical_decay: a_min and l_tilde must be positive");
  return m_at_tc * std::exp(-(gamma_tilde / (a_min * l_tilde)) * (t - tc));
}

double retirement_exponent(double level_b, double age_tb, double ts) {
  check_domain(level_b > 0.0 && level_b < 1.0, "retirement_exponent: level must lie in (0, 1)", level_b);
  check_domain(age_tb > ts, "retirement_exponent: degenerate anchor, T_B must exceed T_S", age_tb - ts);
  return -std::log(level_b) / (age_tb - ts);
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::growing: return "growing";
    case Regime::super_critical_decay: return "super_critical_decay";
    case Regime::retirement_decay: return "retirement_decay";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& text) {
  if (text == "growing") return Regime::growing;
  if (text == "super_critical_decay") return Regime::super_critical_decay;
  if (text == "retirement_decay") return Regime::retirement_decay;
  fail(ErrorKind::parse, "unknown regime '" + text + "'");
}

double LinearSchedule::operator()(double calendar_year) const {
  if (end_year <= start_year || calendar_year <= start_year) return start_value;
  if (calendar_year >= end_year) return end_value;
  const double f = (calendar_year - start_year) / (end_year - start_year);
  return start_value + f * (end_value - start_value);
}

void GroupConfig::validate(int first_year, int last_year) const {
  const std::string where = "group '" + name + "': ";
  auto check = [&](bool ok, const char* field, double value, const char* rule) {
    if (!ok) {
      std::ostringstream out;
      out << where << field << " " << rule << " (got " << value << ")";
      fail(ErrorKind::validation, out.str());
    }
  };
  check(alpha_tilde > 0.0, "alpha_tilde", alpha_tilde, "must be positive");
  check(sigma_min > 0.0, "sigma_min", sigma_min, "must be positive");
  check(a_min > 0.0, "a_min", a_min, "must be positive");
  check(tc0 > 0.0, "tc0", tc0, "must be positive");
  check(decay_anchor.level_a > 0.0 && decay_anchor.level_a < 1.0, "level_a", decay_anchor.level_a,
        "must lie in (0, 1)");
  check(decay_anchor.age_ta > work_start_age, "age_ta", decay_anchor.age_ta, "must exceed work_start_age");
  check(retirement_anchor.level_b > 0.0 && retirement_anchor.level_b < 1.0, "level_b",
        retirement_anchor.level_b, "must lie in (0, 1)");
  check(retirement_anchor.age_tb > retirement_anchor.ts, "age_tb", retirement_anchor.age_tb, "must exceed ts");
  check(retirement_anchor.ts > work_start_age, "ts", retirement_anchor.ts, "must exceed work_start_age");
  check(work_start_age >= 0.0, "work_start_age", work_start_age, "must be non-negative");
  check(max_age > work_start_age && std::floor(max_age) == max_age && std::floor(work_start_age) == work_start_age,
        "max_age", max_age, "must be a whole age above work_start_age");
  check(pareto_tail_exponent > 1.0, "pareto_tail_exponent", pareto_tail_exponent, "must exceed 1");
  check(persons_per_cohort > 0.0, "persons_per_cohort", persons_per_cohort, "must be positive");
  for (int year = first_year; year <= last_year; ++year) {
    const double fl = fl_schedule(year);
    check(fl > 0.0 && fl <= 1.0, "fl_schedule", fl, "must lie in (0, 1] for every simulated year");
    const double mp = pareto_threshold_schedule(year);
    check(mp > 0.0 && mp < 1.0, "pareto_threshold_schedule", mp, "must lie in (0, 1) for every simulated year");
  }
}

GroupConfig default_group() { return GroupConfig{}; }

GroupConfig female_group() {
  GroupConfig g;
  g.name = "female";
  g.fl_schedule = {1962.0, 0.45, 2014.0, 0.65};
  g.pareto_threshold_schedule = {1960.0, 0.29, 2014.0, 0.39};
  return g;
}

}  // namespace ikin::model
