#include <cmath>
#include <random>

#include "helpers.hpp"
#include "income_kinetics/engine.hpp"

using namespace ikin;
using namespace ikin::engine;

namespace {

const exogenous::ExogenousSeries& flat() {
  static const auto s = exogenous::constant_growth(1962, 1850, 2020, 0.0);
  return s;
}

const exogenous::ExogenousSeries& growing() {
  static const auto s = exogenous::constant_growth(1962, 1850, 2020, 0.02);
  return s;
}

}  // namespace

TEST_CASE("critical experience") {
  CHECK(critical_experience(1962, 25.0, flat(), 75.0) == 25.0);
  CHECK(critical_experience(1962, 80.0, flat(), 75.0) == kNever);

  const double t = critical_experience(1930, 25.0, growing(), 75.0);
  REQUIRE(t != kNever);
  CHECK(std::abs(t - 25.0 * std::sqrt(growing().at_time(1930 + t))) < 1e-9);
  // Later cohorts face a higher output level and reach the critical age later.
  CHECK(critical_experience(1970, 25.0, growing(), 75.0) > t);
}

TEST_CASE("income threshold follows output and the group schedule") {
  auto g = model::default_group();
  CHECK(income_threshold(g, growing(), 1962.0) == doctest::Approx(0.43));
  CHECK(income_threshold(g, growing(), 2000.0) == doctest::Approx(0.43 * growing().at(2000)));
  g.a_min = 2.0;
  CHECK(income_threshold(g, growing(), 1962.0) == doctest::Approx(0.86));
}

TEST_CASE("growth integration matches the closed form on a flat series") {
  const auto g = model::default_group();
  const auto path = integrate_growth(1962, g, flat(), 5);
  REQUIRE(path.experience.size() == 5 * kStepsPerYear + 1);
  for (std::size_t n = 0; n < path.experience.size(); n += 7)
    for (int j = 0; j < model::kGridSide; j += 4) {
      const double exact = model::closed_form_income(1.0, model::l_tilde(j), 1.0, 1.0, 0.08, path.experience[n]);
      CHECK(path.unit_growth[n][static_cast<std::size_t>(j)] == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("stepping must follow the calendar") {
  const auto g = model::default_group();
  auto c = init_cohort(1962, g, flat(), 1e5);
  CHECK(c.person_weight == doctest::Approx(1e5 / 841));
  CHECK_ERROR(step_cohort(c, 1964, flat(), g), ErrorKind::domain, "cannot step");
  step_cohort(c, 1963, flat(), g);
  CHECK(c.experience == 1);
}

TEST_CASE("cells switch regime at most once and never exceed their asymptote") {
  const auto g = model::default_group();
  auto c = init_cohort(1930, g, growing(), 1e5);
  std::array<model::Regime, model::kCellCount> previous{};
  for (int year = 1931; year <= 1930 + 75; ++year) {
    step_cohort(c, year, growing(), g);
    const double y = growing().at(year);
    for (std::size_t k = 0; k < c.cells.size(); ++k) {
      const auto& cell = c.cells[k];
      if (previous[k] != model::Regime::growing) CHECK(cell.regime == previous[k]);
      CHECK(cell.m_tilde >= 0.0);
      CHECK(cell.m_tilde <= cell.s_tilde * cell.l_tilde * y + 1e-12);
      previous[k] = cell.regime;
    }
  }
  int decaying = 0;
  for (const auto& cell : c.cells) decaying += cell.regime != model::Regime::growing;
  CHECK(decaying == model::kCellCount);  // everyone has left the growing regime by age 90
}

TEST_CASE("simulation validates before stepping") {
  auto g = model::default_group();
  const auto short_series = exogenous::constant_growth(1962, 1950, 2012, 0.02);
  CHECK_ERROR(run_simulation(g, short_series, 1962, 1970), ErrorKind::coverage, "must cover");
  g.fl_schedule = model::LinearSchedule::constant(0.0);
  CHECK_ERROR(run_simulation(g, growing(), 1962, 1970), ErrorKind::validation, "fl_schedule");
  g = model::default_group();
  g.tc0 = 70.0;
  CHECK_ERROR(run_simulation(g, growing(), 1962, 1970), ErrorKind::validation, "");
  CHECK_ERROR(run_simulation(model::default_group(), growing(), 1970, 1962), ErrorKind::domain, "first_year");
}

TEST_CASE("panels hold one slice per reported year") {
  SimulationOptions o;
  o.report_years = {1990, 1970};
  const auto p = run_simulation(model::default_group(), growing(), 1962, 2000, o);
  REQUIRE(p.years().size() == 2);
  CHECK(p.years()[0].calendar_year == 1970);
  CHECK(p.has_year(1990));
  CHECK(!p.has_year(1980));
  CHECK_ERROR(p.year(1980), ErrorKind::coverage, "no year 1980");
  const auto& slice = p.year(1990);
  REQUIRE(slice.cohorts.size() == 76);
  for (std::size_t e = 0; e < slice.cohorts.size(); ++e) {
    CHECK(slice.cohorts[e].experience == static_cast<int>(e));
    CHECK(slice.cohorts[e].entry_year == 1990 - static_cast<int>(e));
  }
  // Newly entered cohorts have no income yet.
  for (const double m : slice.cohorts[0].m_tilde) CHECK(m == 0.0);
  CHECK(slice.threshold == doctest::Approx(0.43 * growing().at(1990)));
  o.report_years = {2010};
  CHECK_ERROR(run_simulation(model::default_group(), growing(), 1962, 2000, o), ErrorKind::domain, "outside");
}

TEST_CASE("thread count does not change results") {
  SimulationOptions one, many;
  one.threads = 1;
  many.threads = 4;
  one.report_years = many.report_years = {1975, 1985};
  const auto a = run_simulation(model::female_group(), growing(), 1962, 1985, one);
  const auto b = run_simulation(model::female_group(), growing(), 1962, 1985, many);
  for (std::size_t y = 0; y < a.years().size(); ++y)
    for (std::size_t e = 0; e < a.years()[y].cohorts.size(); ++e) {
      CHECK(a.years()[y].cohorts[e].m_tilde == b.years()[y].cohorts[e].m_tilde);
      CHECK(a.years()[y].cohorts[e].regime == b.years()[y].cohorts[e].regime);
    }
}

TEST_CASE("mass above and below the threshold adds up to the cohort") {
  SimulationOptions o;
  o.report_years = {2000};
  const auto p = run_simulation(model::default_group(), growing(), 2000, 2000, o);
  const auto masses = super_critical_mass(p, 2000);
  REQUIRE(masses.size() == 76);
  CHECK(masses.front().age == 15);
  CHECK(masses.front().mass == 0.0);
  for (const auto& m : masses) {
    CHECK(std::abs(m.tail_weight + m.below_weight - m.cohort_weight) <= 1e-9 * m.cohort_weight);
    CHECK(m.mass >= 0.0);
    CHECK(m.mass <= 1.0);
  }
}

TEST_CASE("synthesized Pareto tails") {
  const auto t = synthesize_tail(0.2, 1.5, 3.5, 50);
  REQUIRE(t.income.size() == 50);
  CHECK(t.income.front() == 1.5);
  CHECK(t.income.back() == doctest::Approx(1500.0));
  double sum = 0.0;
  for (const double p : t.probability) sum += p;
  CHECK(sum == doctest::Approx(0.2).epsilon(1e-14));
  for (std::size_t k = 0; k < t.income.size(); ++k)
    CHECK(t.ccdf[k] == doctest::Approx(0.2 * std::pow(t.income[k] / 1.5, -3.5)).epsilon(1e-12));
  CHECK(synthesize_tail(0.0, 1.5, 3.5, 50).income.empty());
  CHECK_ERROR(synthesize_tail(0.2, 1.5, 1.0, 50), ErrorKind::domain, "divergent");
  CHECK(tail_conditional_mean(2.0, 3.5) == doctest::Approx(2.8));
  CHECK_THROWS_AS(tail_conditional_mean(2.0, 0.5), Error);
}
