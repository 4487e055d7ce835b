#include <cmath>
#include <random>

#include "helpers.hpp"
#include "income_kinetics/statistics.hpp"

using namespace ikin;
using namespace ikin::stats;

namespace {

AgeCurve curve_of(std::vector<std::pair<int, double>> pts, int year = 2000) {
  AgeCurve c;
  c.year = year;
  c.group = "g";
  for (auto [a, v] : pts) c.points.push_back({a, v});
  return c;
}

AgeSample sample_of(std::vector<WeightedIncome> records) {
  AgeSample s;
  s.year = 2000;
  s.group = "g";
  s.records = std::move(records);
  return s;
}

}  // namespace

TEST_CASE("curve kinds parse and list the valid names on error") {
  CHECK(curve_kind_from_string("mean_income") == CurveKind::mean_income);
  CHECK(curve_kind_from_string("ratio") == CurveKind::ratio);
  CHECK(std::string(to_string(CurveKind::pareto_share)) == "pareto_share");
  CHECK_ERROR(curve_kind_from_string("median"), ErrorKind::validation, "mean_income, pareto_share, ratio");
}

TEST_CASE("weighted mean and share per age") {
  const auto s = sample_of({{20, 1.0, 1.0}, {20, 3.0, 3.0}, {21, 5.0, 2.0}, {22, 9.0, 0.0}});
  const auto mean = mean_income_by_age(s);
  REQUIRE(mean.points.size() == 2);  // age 22 has no weight
  CHECK(mean.value_at(20) == doctest::Approx(2.5));
  CHECK(mean.value_at(21) == 5.0);
  CHECK(!mean.value_at(22));

  const auto share = pareto_share_by_age(s, 3.0);
  CHECK(share.threshold == 3.0);
  CHECK(share.value_at(20) == doctest::Approx(0.75));
  CHECK(share.value_at(21) == 1.0);

  const auto empty = mean_income_by_age(sample_of({}));
  CHECK(empty.points.empty());
  REQUIRE(empty.flags.size() == 1);
  CHECK(empty.flags[0].find("empty") != std::string::npos);
}

TEST_CASE("share is non-increasing in the threshold (random samples)") {
  std::mt19937 rng(11);
  std::lognormal_distribution<double> income(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::vector<WeightedIncome> rec;
  for (int k = 0; k < 2000; ++k) rec.push_back({15 + k % 40, income(rng), weight(rng)});
  const auto s = sample_of(rec);
  AgeCurve previous = pareto_share_by_age(s, 0.0);
  for (double t = 0.1; t < 6.0; t += 0.1) {
    const auto next = pareto_share_by_age(s, t);
    for (std::size_t k = 0; k < next.points.size(); ++k) CHECK(next.points[k].value <= previous.points[k].value);
    previous = next;
  }
}

TEST_CASE("moving average") {
  SUBCASE("unit impulse spreads to 1/7 in the interior") {
    std::vector<std::pair<int, double>> pts;
    for (int a = 15; a <= 60; ++a) pts.push_back({a, a == 40 ? 1.0 : 0.0});
    const auto m = moving_average(curve_of(pts), 7);
    CHECK(m.smoothing_window == 7);
    for (const auto& p : m.points) CHECK(p.value == (std::abs(p.age - 40) <= 3 ? 1.0 / 7.0 : 0.0));
  }
  SUBCASE("window shrinks symmetrically near the ends") {
    const auto m = moving_average(curve_of({{1, 1.0}, {2, 2.0}, {3, 3.0}, {4, 10.0}}), 7);
    CHECK(m.points[0].value == 1.0);
    CHECK(m.points[1].value == doctest::Approx(2.0));
    CHECK(m.points[2].value == doctest::Approx(5.0));
    CHECK(m.points[3].value == 10.0);
  }
  SUBCASE("absent ages are not treated as zeros") {
    const auto m = moving_average(curve_of({{10, 1.0}, {11, 1.0}, {13, 1.0}, {14, 1.0}, {15, 1.0}}), 3);
    for (const auto& p : m.points) CHECK(p.value == doctest::Approx(1.0));
  }
  CHECK_ERROR(moving_average(curve_of({{1, 1.0}}), 4), ErrorKind::domain, "odd");
  CHECK(moving_average(curve_of({{1, 1.0}, {2, 3.0}}), 1).points[1].value == 3.0);
}

TEST_CASE("normalization keeps the argmax and sets the peak to one") {
  const auto c = curve_of({{20, 0.3}, {21, 1.7}, {22, 0.9}});
  const auto n = normalize_to_peak(c);
  CHECK(n.normalized);
  CHECK(peak_index(n) == peak_index(c));
  CHECK(n.points[1].value == 1.0);
  CHECK(n.points[0].value == doctest::Approx(0.3 / 1.7));
  CHECK_ERROR(normalize_to_peak(curve_of({{20, 0.0}, {21, 0.0}})), ErrorKind::domain, "degenerate");
  CHECK_ERROR(normalize_to_peak(curve_of({})), ErrorKind::domain, "degenerate");

  const auto pp = post_process(c, 3, true);
  CHECK(pp.smoothing_window == 3);
  CHECK(pp.normalized);
}

TEST_CASE("group ratio") {
  const auto a = curve_of({{20, 1.0}, {21, 2.0}, {22, 3.0}});
  const auto b = curve_of({{21, 4.0}, {22, 0.0}, {23, 1.0}});
  const auto r = group_ratio(a, b);
  CHECK(r.kind == CurveKind::ratio);
  CHECK(r.group == "g/g");
  REQUIRE(r.points.size() == 1);
  CHECK(r.value_at(21) == 0.5);
  REQUIRE(r.flags.size() == 1);
  CHECK(r.flags[0].find("age 22") != std::string::npos);
  CHECK_ERROR(group_ratio(a, curve_of({{21, 1.0}}, 1990)), ErrorKind::alignment, "different years");
  CHECK_ERROR(group_ratio(a, curve_of({{50, 1.0}})), ErrorKind::alignment, "share no ages");
}

TEST_CASE("curve comparison") {
  const auto a = curve_of({{20, 1.0}, {21, 2.0}, {22, 3.0}});
  const auto same = compare_curves(a, a);
  CHECK(same.rows.size() == 3);
  CHECK(same.max_abs == 0.0);
  CHECK(same.ssr == 0.0);

  auto shifted = a;
  for (auto& p : shifted.points) p.value += 0.1;
  const auto off = compare_curves(shifted, a);
  CHECK(off.max_abs == doctest::Approx(0.1));
  CHECK(off.rms == doctest::Approx(0.1));
  for (const auto& r : off.rows) CHECK(r.residual == doctest::Approx(0.1));
  CHECK_ERROR(compare_curves(a, curve_of({{40, 1.0}})), ErrorKind::alignment, "share no ages");
}

TEST_CASE("microdata ingestion") {
  testing::TempDir dir;
  const auto p = dir.file("m.csv",
                          "# survey\n"
                          "weight,year,age,income,gender,race\n"
                          "10,2000,30,100,M,100\n"
                          "30,2000,30,300,F,200\n"
                          "5,2000,31,-5,M,100\n"
                          "5,2000,31,50,F,100\n"
                          "-1,2000,32,50,F,100\n"
                          "5,1990,31,50,F,100\n");
  const auto set = ingest_microdata(p);
  CHECK(set.records.size() == 4);
  CHECK(set.rejected == 2);
  REQUIRE(set.warnings.size() == 2);
  CHECK(set.warnings[0].find("m.csv:5") != std::string::npos);
  CHECK(set.warnings[0].find("negative income") != std::string::npos);

  const auto all = sample_from_microdata(set, 2000, GroupFilter::parse("all"), "all");
  const auto mean = mean_income_by_age(all);
  CHECK(mean.provenance == "microdata");
  CHECK(mean.value_at(30) == doctest::Approx(250.0));
  const auto bf = sample_from_microdata(set, 2000, GroupFilter::parse("BF"), "BF");
  CHECK(bf.records.size() == 1);
  CHECK(sample_from_microdata(set, 2000, GroupFilter::parse("WM"), "WM").records.size() == 1);

  CHECK_ERROR(ingest_microdata(dir.file("g.csv", "year,age,income,gender,race,weight\n2000,30,1,X,100,1\n")),
              ErrorKind::parse, "g.csv:2");
  CHECK_ERROR(ingest_microdata(dir.file("h.csv", "year,age,income,race,weight\n")), ErrorKind::parse, "gender");
  CHECK_ERROR(ingest_microdata(dir.file("f.csv", "year,age,income,gender,race,weight\n2000,30,1\n")),
              ErrorKind::parse, "expected 6 fields");
  const auto empty = ingest_microdata(dir.file("e.csv", ""));
  CHECK(empty.records.empty());
  CHECK(empty.warnings.size() == 1);
}

TEST_CASE("group filters") {
  CHECK(!GroupFilter::parse("all").gender);
  CHECK(GroupFilter::parse("F").gender == 'F');
  CHECK(GroupFilter::parse("B").race == 200);
  const auto wm = GroupFilter::parse("WM");
  CHECK(wm.gender == 'M');
  CHECK(wm.race == 100);
  CHECK_ERROR(GroupFilter::parse("MF"), ErrorKind::validation, "two genders");
  CHECK_ERROR(GroupFilter::parse("X"), ErrorKind::validation, "group filter");
}

TEST_CASE("panel curves") {
  const auto series = exogenous::constant_growth(1962, 1880, 2012, 0.02);
  engine::SimulationOptions o;
  o.report_years = {1990};
  const auto panel = engine::run_simulation(model::default_group(), series, 1990, 1990, o);
  const auto share = pareto_share_by_age(panel, 1990);
  REQUIRE(share.points.size() == 76);
  CHECK(share.points.front().age == 15);
  CHECK(share.points.front().value == 0.0);
  CHECK(share.threshold == panel.year(1990).threshold);
  const auto lower = pareto_share_by_age(panel, 1990, 0.1);
  for (std::size_t k = 0; k < share.points.size(); ++k) CHECK(lower.points[k].value >= share.points[k].value);

  const auto mean = mean_income_by_age(panel, 1990);
  const auto raw = mean_income_by_age(sample_from_panel(panel, 1990, false));
  CHECK(mean.provenance == "simulated");
  // The tail overlay lifts ages with incomes above the threshold.
  for (std::size_t k = 0; k < mean.points.size(); ++k) CHECK(mean.points[k].value >= raw.points[k].value);
}
