#include <algorithm>

#include "helpers.hpp"
#include "income_kinetics/calibration.hpp"

using namespace ikin;
using namespace ikin::calib;

namespace {

const exogenous::ExogenousSeries& series() {
  static const auto s = exogenous::constant_growth(1962, 1880, 2012, 0.02);
  return s;
}

// Targets produced by the engine itself with tc0 = 25.
CalibrationProblem synthetic_problem() {
  static const std::vector<Target> targets = [] {
    auto g = model::default_group();
    g.tc0 = 25.0;
    engine::SimulationOptions o;
    o.report_years = {1962, 2012};
    const auto panel = engine::run_simulation(g, series(), 1962, 2012, o);
    std::vector<Target> t;
    for (int year : {1962, 2012}) {
      t.push_back({stats::post_process(stats::mean_income_by_age(panel, year), 7, true), 1.0, ""});
      t.push_back({stats::post_process(stats::pareto_share_by_age(panel, year), 7, false), 1.0, ""});
    }
    return t;
  }();
  CalibrationProblem p;
  p.base = model::default_group();
  p.parameters = {{"tc0", 15.0, 40.0, 30.0}};
  p.targets = targets;
  return p;
}

}  // namespace

TEST_CASE("parameters") {
  const auto& names = parameter_names();
  CHECK(std::find(names.begin(), names.end(), "tc0") != names.end());
  CHECK(ParameterSpec{"tc0", 1, 2, 1.5}.log_scale());
  CHECK(!ParameterSpec{"fl_start", 0.1, 0.9, 0.5}.log_scale());

  auto g = model::default_group();
  set_parameter(g, "tc0", 27.0);
  CHECK(get_parameter(g, "tc0") == 27.0);
  CHECK_ERROR(set_parameter(g, "bogus", 1.0), ErrorKind::validation, "bogus");
  CHECK_ERROR(set_parameter(g, "fl_end", 0.6), ErrorKind::validation, "");

  CalibrationProblem p = synthetic_problem();
  p.parameters = {{"sigma_a_product", 0.1, 1.0, 0.5}, {"a_min", 0.5, 2.0, 1.0}};
  const auto fitted = apply_parameters(p, {0.6, 2.0});
  CHECK(fitted.a_min == 2.0);
  CHECK(fitted.sigma_min * fitted.a_min == doctest::Approx(0.6));
}

TEST_CASE("problem validation") {
  auto p = synthetic_problem();
  CHECK_NOTHROW(p.validate());
  CHECK(p.target_years() == std::vector<int>{1962, 2012});

  auto bad = p;
  bad.parameters[0].initial = 50.0;
  CHECK_ERROR(bad.validate(), ErrorKind::validation, "tc0");
  bad = p;
  bad.parameters[0].lower = 45.0;
  CHECK_ERROR(bad.validate(), ErrorKind::validation, "tc0");
  bad = p;
  bad.parameters.push_back(bad.parameters[0]);
  CHECK_ERROR(bad.validate(), ErrorKind::validation, "tc0");
  bad = p;
  bad.targets.clear();
  CHECK_ERROR(bad.validate(), ErrorKind::validation, "target");
  bad = p;
  bad.targets[0].weight = 0.0;
  CHECK_ERROR(bad.validate(), ErrorKind::validation, "weight");
}

TEST_CASE("objective") {
  const auto p = synthetic_problem();
  CHECK(objective({25.0}, p, series()) < 1e-9);
  const double off = objective({30.0}, p, series());
  CHECK(off > 1e-6);
  CHECK(objective({20.0}, p, series()) > 1e-6);

  auto doubled = p;
  for (auto& t : doubled.targets) t.weight *= 2.0;
  CHECK(objective({30.0}, doubled, series()) == doctest::Approx(2.0 * off));

  auto reordered = p;
  std::reverse(reordered.targets.begin(), reordered.targets.end());
  CHECK(objective({30.0}, reordered, series()) == doctest::Approx(off).epsilon(1e-12));

  auto sar = p;
  sar.norm = LossNorm::sar;
  CHECK(objective({30.0}, sar, series()) > 0.0);

  CHECK_ERROR(objective({41.0}, p, series()), ErrorKind::domain, "tc0");
  CHECK_ERROR(objective({25.0, 1.0}, p, series()), ErrorKind::domain, "wrong length");

  // A series too short for the simulation is a failed evaluation, not an error.
  const auto short_series = exogenous::constant_growth(1962, 1950, 2012, 0.02);
  CHECK(objective({25.0}, p, short_series) == kPenaltyLoss);
}

TEST_CASE("fit") {
  const auto p = synthetic_problem();

  SUBCASE("a budget of one returns the initial point") {
    const auto r = fit(p, series(), {.budget = 1});
    CHECK(r.fitted == std::vector<double>{30.0});
    CHECK(!r.converged);
    CHECK(r.evaluations == 1);
  }
  SUBCASE("recovers the generating value") {
    std::vector<TraceEntry> seen;
    const auto r = fit(p, series(), {.budget = 120}, [&](const TraceEntry& e) { seen.push_back(e); });
    CHECK(r.evaluations <= 120);
    CHECK(seen.size() == r.evaluations);
    CHECK(r.trace.size() == r.evaluations);
    CHECK(r.fitted[0] == doctest::Approx(25.0).epsilon(0.02));
    CHECK(r.fitted_group.tc0 == r.fitted[0]);
    for (std::size_t k = 0; k < seen.size(); ++k) {
      CHECK(seen[k].evaluation == k + 1);
      CHECK(seen[k].values[0] >= 15.0);
      CHECK(seen[k].values[0] <= 40.0);
      if (k > 0) CHECK(seen[k].best_loss <= seen[k - 1].best_loss);
    }
    CHECK(r.loss == seen.back().best_loss);
    const auto text = result_text(p, r);
    CHECK(text.find("tc0 = ") != std::string::npos);
    const auto csv = trace_csv(p, r);
    CHECK(csv.rfind("evaluation,restart,tc0,loss,best_loss\n", 0) == 0);
  }
}

TEST_CASE("problem files") {
  const auto root = std::filesystem::path(IKIN_TEST_DATA);
  const auto p = load_problem(root / "calibration" / "problem.ini");
  CHECK(p.base.name == "male");
  REQUIRE(p.parameters.size() == 1);
  CHECK(p.parameters[0].initial == 32.0);
  CHECK(p.targets.size() == 5);
  CHECK(p.target_years() == std::vector<int>{1962, 1987, 2012});
  CHECK(p.targets[0].curve.normalized);
  CHECK(p.targets[0].curve.smoothing_window == 7);

  testing::TempDir dir;
  dir.file("t.csv", "# year=1990, kind=mean_income, group=g, provenance=microdata, smoothed=none, normalized=false\n"
                    "age,value\n30,1\n");
  CHECK_ERROR(load_problem(dir.file("a.ini", "[parameters]\ntc0 = 40, 15, 20\n[targets]\nt.csv = 1\n")),
              ErrorKind::validation, "tc0");
  CHECK_ERROR(load_problem(dir.file("b.ini", "[parameters]\ntc0 = 15, 40\n[targets]\nt.csv = 1\n")),
              ErrorKind::parse, "b.ini:2");
  CHECK_ERROR(load_problem(dir.file("c.ini", "[parameters]\ntc0 = 15, 40, 20\n[targets]\nmissing.csv = 1\n")),
              ErrorKind::io, "missing.csv");
  CHECK_ERROR(load_problem(dir.file("d.ini", "[problem]\nloss = l3\n[parameters]\ntc0 = 15, 40, 20\n[targets]\nt.csv = 1\n")),
              ErrorKind::validation, "l3");
  const auto ok = load_problem(dir.file("e.ini", "[parameters]\ntc0 = 15, 40, 20\n[targets]\nt.csv = 2\n"));
  CHECK(ok.base.tc0 == model::default_group().tc0);
  CHECK(ok.targets[0].weight == 2.0);
}
