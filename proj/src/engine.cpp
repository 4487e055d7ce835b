#include "income_kinetics/engine.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "income_kinetics/error.hpp"
#include "income_kinetics/threads.hpp"

namespace ikin::engine {

using exogenous::ExogenousSeries;
using model::GroupConfig;
using model::kGridSide;
using model::Regime;

namespace {

// Event times closer than this to a grid node are handled at that node.
constexpr double kTimeEps = 1e-9;

struct Forcing {
  double capability = 0.0;      // Sigma of a unit-capability cell
  double inv_instrument = 0.0;  // 1 / A of a unit-instrument cell
};

Forcing forcing_at(const Cohort& c, const GroupConfig& g, const ExogenousSeries& s, double experience) {
  const double tau = c.entry_year + experience;
  const double root = std::sqrt(s.at_time(tau) / c.entry_output);
  const double fl_ratio = g.fl_schedule(tau) / c.entry_fl;
  return {c.capability_scale * root, 1.0 / (c.instrument_scale * root * fl_ratio)};
}

constexpr std::array<double, kGridSide> make_inverse_l() {
  std::array<double, kGridSide> inv{};
  for (int j = 0; j < kGridSide; ++j) inv[static_cast<std::size_t>(j)] = 1.0 / model::l_tilde(j);
  return inv;
}
constexpr auto kInverseL = make_inverse_l();

// One RK4 step of the unit-capability growth equation for every instrument
// class that still has growing cells.
void rk4_step(const Cohort& c, const GroupConfig& g, const ExogenousSeries& s, double from, double to,
              std::array<double, kGridSide>& unit, bool all_classes) {
  const double h = to - from;
  const Forcing fa = forcing_at(c, g, s, from);
  const Forcing fm = forcing_at(c, g, s, from + 0.5 * h);
  const Forcing fb = forcing_at(c, g, s, to);
  const double alpha = g.alpha_tilde;
  for (std::size_t j = 0; j < unit.size(); ++j) {
    if (!all_classes && c.growing_lo[j] >= c.growing_hi[j]) continue;
    const double il = kInverseL[j];
    const double m = unit[j];
    const double k1 = alpha * (fa.capability - m * fa.inv_instrument * il);
    const double k2 = alpha * (fm.capability - (m + 0.5 * h * k1) * fm.inv_instrument * il);
    const double k3 = alpha * (fm.capability - (m + 0.5 * h * k2) * fm.inv_instrument * il);
    const double k4 = alpha * (fb.capability - (m + h * k3) * fb.inv_instrument * il);
    unit[j] = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

// Monthly nodes in (from, from + 1], plus any event time strictly inside.
std::vector<double> year_nodes(int from, std::initializer_list<double> events) {
  std::vector<double> nodes;
  nodes.reserve(kStepsPerYear + events.size());
  for (int k = 1; k <= kStepsPerYear; ++k) nodes.push_back(from + static_cast<double>(k) / kStepsPerYear);
  for (double e : events) {
    if (!(e > from + kTimeEps && e < from + 1 - kTimeEps)) continue;
    const bool near_node =
        std::any_of(nodes.begin(), nodes.end(), [e](double n) { return std::abs(n - e) <= kTimeEps; });
    if (!near_node) nodes.push_back(e);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

void start_decay(model::TrajectoryState& cell, Regime regime, double experience, double rate) {
  cell.regime = regime;
  cell.onset_experience = experience;
  cell.onset_income = cell.m_tilde;
  cell.decay_rate = rate;
}

}  // namespace

double critical_experience(int entry_year, double tc0, const ExogenousSeries& series, double max_experience) {
  const double horizon = std::min(max_experience, static_cast<double>(series.last_year() - entry_year));
  if (horizon <= 0.0) return kNever;
  auto gap = [&](double t) { return t - model::critical_age(tc0, series.at_time(entry_year + t)); };

  const int steps = static_cast<int>(std::floor(horizon * kStepsPerYear));
  double lower = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / kStepsPerYear;
    const double g = gap(t);
    if (g == 0.0) return t;
    if (g > 0.0) {
      boost::uintmax_t iterations = 100;
      const auto [a, b] = boost::math::tools::toms748_solve(
          gap, lower, t, boost::math::tools::eps_tolerance<double>(52), iterations);
      return 0.5 * (a + b);
    }
    lower = t;
  }
  return kNever;
}

double income_threshold(const GroupConfig& group, const ExogenousSeries& series, double calendar_time) {
  const double mp = group.pareto_threshold_schedule(calendar_time);
  return model::pareto_threshold(mp, series.at_time(calendar_time)) * group.sigma_min * group.a_min;
}

Cohort init_cohort(int entry_year, const GroupConfig& group, const ExogenousSeries& series, double persons) {
  require(series.covers(entry_year), ErrorKind::coverage,
          "exogenous series does not cover entry year " + std::to_string(entry_year));
  require(persons > 0.0, ErrorKind::validation, "cohort size must be positive");

  Cohort c;
  c.entry_year = entry_year;
  c.person_weight = persons / model::kCellCount;
  c.entry_output = series.at(entry_year);
  c.entry_fl = group.fl_schedule(entry_year);
  c.capability_scale = model::scale_with_gdp(group.sigma_min, c.entry_output);
  c.instrument_scale = model::scale_with_gdp(group.a_min, c.entry_output) * c.entry_fl;

  for (int i = 0; i < kGridSide; ++i)
    for (int j = 0; j < kGridSide; ++j) {
      auto& cell = c.cells[model::cell_index(i, j)];
      cell.s_tilde = model::s_tilde(i);
      cell.l_tilde = model::l_tilde(j);
    }
  c.growing_lo.fill(0);
  c.growing_hi.fill(kGridSide);

  c.critical_experience = critical_experience(entry_year, group.tc0, series, group.max_experience());
  if (c.critical_experience != kNever) {
    const double anchor = group.decay_anchor_experience();
    require(anchor > c.critical_experience, ErrorKind::validation,
            "cohort " + std::to_string(entry_year) + ": decay anchor age_ta must exceed the critical age");
    c.gamma_tilde = model::decay_exponent(group.decay_anchor.level_a, anchor, c.critical_experience);
  }
  const auto& r = group.retirement_anchor;
  c.retirement_rate = model::retirement_exponent(r.level_b, r.age_tb, r.ts);
  c.retirement_factor = std::exp(-c.retirement_rate);
  for (int j = 0; j < kGridSide; ++j)
    c.super_critical_factor[static_cast<std::size_t>(j)] = std::exp(-(c.gamma_tilde / model::l_tilde(j)));
  return c;
}

void step_cohort(Cohort& c, int calendar_year, const ExogenousSeries& series, const GroupConfig& group) {
  require(calendar_year == c.entry_year + c.experience + 1, ErrorKind::domain,
          "step_cohort: cohort " + std::to_string(c.entry_year) + " at experience " + std::to_string(c.experience) +
              " cannot step to " + std::to_string(calendar_year));
  require(series.covers(calendar_year), ErrorKind::coverage,
          "exogenous series does not cover " + std::to_string(calendar_year));

  const int from = c.experience;
  const double tc = c.critical_experience;
  const double ts = group.retirement_experience();
  const double watch_from = std::min(tc, ts) - kTimeEps;

  double previous = from;
  for (const double node : year_nodes(from, {tc, ts})) {
    rk4_step(c, group, series, previous, node, c.unit_growth, false);
    previous = node;
    if (node < watch_from) continue;

    const double threshold = income_threshold(group, series, c.entry_year + node);
    const bool past_critical = node + kTimeEps >= tc;
    const bool past_retirement = node + kTimeEps >= ts;
    for (int j = 0; j < kGridSide; ++j) {
      const auto js = static_cast<std::size_t>(j);
      int& lo = c.growing_lo[js];
      int& hi = c.growing_hi[js];
      const double unit = c.unit_growth[js];
      if (past_critical) {
        while (hi > lo && model::s_tilde(hi - 1) * unit >= threshold) {
          --hi;
          auto& cell = c.cells[model::cell_index(hi, j)];
          cell.m_tilde = cell.s_tilde * unit;
          // The rate of the maximal trajectory is gamma_tilde; smaller
          // instruments decay proportionally faster.
          start_decay(cell, Regime::super_critical_decay, node, c.gamma_tilde / cell.l_tilde);
        }
      }
      if (past_retirement) {
        while (lo < hi && model::s_tilde(lo) * unit < threshold) {
          auto& cell = c.cells[model::cell_index(lo, j)];
          cell.m_tilde = cell.s_tilde * unit;
          start_decay(cell, Regime::retirement_decay, node, c.retirement_rate);
          ++lo;
        }
      }
    }
  }

  const double end = from + 1;
  for (int i = 0; i < kGridSide; ++i) {
    for (int j = 0; j < kGridSide; ++j) {
      auto& cell = c.cells[model::cell_index(i, j)];
      if (cell.regime == Regime::growing) {
        cell.m_tilde = cell.s_tilde * c.unit_growth[static_cast<std::size_t>(j)];
      } else if (cell.onset_experience > from) {
        cell.m_tilde = cell.onset_income * std::exp(-cell.decay_rate * (end - cell.onset_experience));
      } else {
        cell.m_tilde *= cell.regime == Regime::retirement_decay ? c.retirement_factor
                                                                : c.super_critical_factor[static_cast<std::size_t>(j)];
      }
    }
  }
  c.experience = from + 1;
}

GrowthPath integrate_growth(int entry_year, const GroupConfig& group, const ExogenousSeries& series, int years) {
  Cohort c = init_cohort(entry_year, group, series, group.persons_per_cohort);
  GrowthPath path;
  path.experience.push_back(0.0);
  path.unit_growth.push_back(c.unit_growth);
  for (int year = 0; year < years; ++year) {
    require(series.covers(entry_year + year + 1), ErrorKind::coverage,
            "exogenous series does not cover " + std::to_string(entry_year + year + 1));
    double previous = year;
    for (const double node : year_nodes(year, {})) {
      rk4_step(c, group, series, previous, node, c.unit_growth, true);
      previous = node;
      path.experience.push_back(node);
      path.unit_growth.push_back(c.unit_growth);
    }
  }
  return path;
}

bool SimulationPanel::has_year(int year) const {
  return std::any_of(years_.begin(), years_.end(), [year](const YearSlice& s) { return s.calendar_year == year; });
}

const YearSlice& SimulationPanel::year(int year) const {
  for (const auto& slice : years_)
    if (slice.calendar_year == year) return slice;
  fail(ErrorKind::coverage, "panel for group '" + info_.group + "' has no year " + std::to_string(year));
}

namespace {

CohortSnapshot snapshot(const Cohort& c) {
  CohortSnapshot s;
  s.entry_year = c.entry_year;
  s.experience = c.experience;
  s.person_weight = c.person_weight;
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    s.m_tilde[k] = c.cells[k].m_tilde;
    s.regime[k] = c.cells[k].regime;
  }
  return s;
}

}  // namespace

SimulationPanel run_simulation(const GroupConfig& group, const ExogenousSeries& series, int first_year,
                               int last_year, const SimulationOptions& options) {
  require(first_year <= last_year, ErrorKind::domain, "run_simulation: first_year must not exceed last_year");
  const int max_exp = static_cast<int>(group.max_experience());
  const int first_entry = first_year - max_exp;

  group.validate(first_entry, last_year);
  require(series.covers(first_entry, last_year), ErrorKind::coverage,
          "exogenous series [" + std::to_string(series.first_year()) + ", " + std::to_string(series.last_year()) +
              "] must cover [" + std::to_string(first_entry) + ", " + std::to_string(last_year) + "]");
  for (int year = first_entry; year <= last_year; ++year) {
    const double tc = model::critical_age(group.tc0, series.at(year));
    require(tc < group.decay_anchor_experience(), ErrorKind::validation,
            "group '" + group.name + "': age_ta must exceed work_start_age + T_c in every year; T_c(" +
                std::to_string(year) + ") = " + std::to_string(tc));
  }

  std::vector<int> report = options.report_years;
  if (report.empty())
    for (int year = first_year; year <= last_year; ++year) report.push_back(year);
  std::sort(report.begin(), report.end());
  report.erase(std::unique(report.begin(), report.end()), report.end());
  for (int year : report)
    require(year >= first_year && year <= last_year, ErrorKind::domain,
            "report year " + std::to_string(year) + " outside the simulated range");

  const auto slots_per_year = static_cast<std::size_t>(max_exp + 1);
  std::vector<YearSlice> slices(report.size());
  for (std::size_t y = 0; y < report.size(); ++y) {
    slices[y].calendar_year = report[y];
    slices[y].threshold = income_threshold(group, series, report[y]);
    slices[y].cohorts.resize(slots_per_year);
  }

  const int first_needed_entry = report.front() - max_exp;
  const int last_needed_entry = report.back();
  const auto cohort_count = static_cast<std::size_t>(last_needed_entry - first_needed_entry + 1);

  parallel_for(cohort_count, resolve_thread_count(options.threads), [&](std::size_t k) {
    const int entry = first_needed_entry + static_cast<int>(k);
    const int final_year = std::min(last_year, entry + max_exp);
    // Report years this cohort is alive in, in increasing order.
    auto next = std::lower_bound(report.begin(), report.end(), entry);
    if (next == report.end() || *next > final_year) return;

    Cohort c = init_cohort(entry, group, series, group.persons_per_cohort);
    const int stop = std::min(final_year, *std::prev(std::upper_bound(report.begin(), report.end(), final_year)));
    for (int year = entry;; ++year) {
      if (year == *next) {
        const auto y = static_cast<std::size_t>(next - report.begin());
        slices[y].cohorts[static_cast<std::size_t>(c.experience)] = snapshot(c);
        ++next;
      }
      if (year >= stop) break;
      step_cohort(c, year + 1, series, group);
    }
  });

  PanelInfo info;
  info.group = group.name;
  info.base_year = series.base_year();
  info.work_start_age = static_cast<int>(group.work_start_age);
  info.max_age = static_cast<int>(group.max_age);
  info.tail_exponent = group.pareto_tail_exponent;
  info.persons_per_cohort = group.persons_per_cohort;
  return SimulationPanel(std::move(info), std::move(slices));
}

std::vector<AgeMass> super_critical_mass(const SimulationPanel& panel, int year) {
  const auto& slice = panel.year(year);
  std::vector<AgeMass> out;
  out.reserve(slice.cohorts.size());
  for (const auto& snap : slice.cohorts) {
    AgeMass a;
    a.age = panel.info().work_start_age + snap.experience;
    a.cohort_weight = panel.info().persons_per_cohort;
    for (const double m : snap.m_tilde) (m >= slice.threshold ? a.tail_weight : a.below_weight) += snap.person_weight;
    a.mass = a.tail_weight / (a.tail_weight + a.below_weight);
    out.push_back(a);
  }
  return out;
}

double tail_conditional_mean(double threshold, double exponent) {
  require(exponent > 1.0, ErrorKind::domain, "Pareto exponent must exceed 1 for a finite mean");
  return threshold * exponent / (exponent - 1.0);
}

ParetoTail synthesize_tail(double mass, double threshold, double exponent, int sample_count, double decades) {
  require(exponent > 1.0, ErrorKind::domain, "synthesize_tail: divergent mean, exponent must exceed 1");
  require(mass >= 0.0 && mass <= 1.0, ErrorKind::domain, "synthesize_tail: mass must lie in [0, 1]");
  require(threshold > 0.0, ErrorKind::domain, "synthesize_tail: threshold must be positive");
  require(sample_count >= 2 && decades > 0.0, ErrorKind::domain,
          "synthesize_tail: need at least two samples over a positive span");

  ParetoTail tail{threshold, exponent, mass, {}, {}, {}};
  if (mass == 0.0) return tail;
  const auto n = static_cast<std::size_t>(sample_count);
  tail.income.resize(n);
  tail.ccdf.resize(n);
  tail.probability.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = threshold * std::pow(10.0, decades * static_cast<double>(k) / static_cast<double>(n - 1));
    tail.income[k] = k == 0 ? threshold : x;
    tail.ccdf[k] = k == 0 ? mass : mass * std::pow(x / threshold, -exponent);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) tail.probability[k] = tail.ccdf[k] - tail.ccdf[k + 1];
  tail.probability[n - 1] = tail.ccdf[n - 1];
  return tail;
}

}  // namespace ikin::engine
