#include <zlib.h>

#include <cmath>

#include "helpers.hpp"
#include "income_kinetics/exogenous.hpp"

using namespace ikin;
using namespace ikin::exogenous;

TEST_CASE("series tables skip comments, blank lines and a header row") {
  testing::TempDir dir;
  const auto p = dir.file("gdp.csv", "# comment\nyear,value\n\n1960,100\n1961, 102.5\n");
  const auto t = load_series(p);
  REQUIRE(t.size() == 2);
  CHECK(t.at(1961) == 102.5);
}

TEST_CASE("series table errors carry their location") {
  testing::TempDir dir;
  CHECK_ERROR(load_series(dir.file("a.csv", "1960,100\n1961,abc\n")), ErrorKind::parse, "a.csv:2");
  CHECK_ERROR(load_series(dir.file("b.csv", "1960,100,3\n")), ErrorKind::parse, "expected 2 fields");
  CHECK_ERROR(load_series(dir.file("c.csv", "1960,100\n1960,101\n")), ErrorKind::validation, "duplicate year 1960");
  CHECK_ERROR(load_series(dir.file("d.csv", "# nothing\n")), ErrorKind::validation, "empty input");
  CHECK_ERROR(load_series(dir.file("e.csv", "60,100\n")), ErrorKind::parse, "four digits");
  CHECK_ERROR(load_series(dir / "missing.csv"), ErrorKind::io, "missing.csv");
}

TEST_CASE("gzip-compressed tables are read transparently") {
  testing::TempDir dir;
  const auto p = dir / "gdp.csv.gz";
  gzFile f = gzopen(p.string().c_str(), "wb");
  REQUIRE(f != nullptr);
  const std::string body = "1960,100\n1961,103\n";
  gzwrite(f, body.data(), static_cast<unsigned>(body.size()));
  gzclose(f);
  CHECK(load_series(p).at(1961) == 103.0);
}

TEST_CASE("population files and the working-age correction") {
  testing::TempDir dir;
  const auto pop = load_population(dir.file("pop.csv", "year,total,working_age\n1960,100,50\n1961,100,80\n"));
  const SeriesTable gdp{{1959, 1.0}, {1960, 10.0}, {1961, 10.0}};
  const auto corrected = working_age_correction(gdp, pop);
  REQUIRE(corrected.size() == 2);  // shared years only
  CHECK(corrected.at(1960) == 20.0);
  CHECK(corrected.at(1961) == 12.5);
  CHECK_ERROR(working_age_correction({{1900, 1.0}}, pop), ErrorKind::coverage, "share no years");
  CHECK_ERROR(load_population(dir.file("bad.csv", "1960,100,150\n")), ErrorKind::validation, "working_age");
}

TEST_CASE("gaps are filled geometrically") {
  const auto f = fill_gaps({{2000, 1.0}, {2002, 4.0}});
  REQUIRE(f.size() == 3);
  CHECK(f.at(2001) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("splicing rescales the extension to match at the splice year") {
  const SeriesTable primary{{1950, 200.0}, {1951, 210.0}};
  const SeriesTable extension{{1948, 40.0}, {1949, 45.0}, {1950, 50.0}, {1951, 99.0}};
  const auto s = splice_series(primary, extension, 1950);
  REQUIRE(s.size() == 4);
  CHECK(s.at(1950) == 200.0);
  CHECK(s.at(1951) == 210.0);
  CHECK(s.at(1949) == doctest::Approx(180.0).epsilon(1e-15));
  CHECK(s.at(1949) / s.at(1948) == doctest::Approx(45.0 / 40.0).epsilon(1e-14));
  CHECK_ERROR(splice_series(primary, extension, 1947), ErrorKind::coverage, "primary");
  CHECK_ERROR(splice_series(primary, {{1900, 1.0}}, 1950), ErrorKind::coverage, "extension");
}

TEST_CASE("normalization sets the base year to exactly one") {
  const auto s = normalize_to_base({{1960, 3.0}, {1962, 7.0}, {1963, 9.1}}, 1962, "test");
  CHECK(s.at(1962) == 1.0);
  CHECK(s.first_year() == 1960);
  CHECK(s.last_year() == 1963);
  CHECK(s.covers(1961));
  CHECK(s.at(1963) == doctest::Approx(1.3));
  CHECK(s.source_note() == "test");
  CHECK_ERROR(normalize_to_base({{1960, 3.0}}, 1970), ErrorKind::coverage, "base year 1970");
  CHECK_ERROR(normalize_to_base({{1960, 3.0}, {1961, -1.0}}, 1960), ErrorKind::validation, "1961");
  CHECK_ERROR(s.at(1970), ErrorKind::coverage, "does not cover 1970");
}

TEST_CASE("fractional times interpolate geometrically") {
  const auto s = normalize_to_base({{2000, 1.0}, {2001, 4.0}}, 2000);
  CHECK(s.at_time(2000.0) == 1.0);
  CHECK(s.at_time(2000.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.at_time(2001.0) == 4.0);
  CHECK_THROWS_AS(s.at_time(2001.5), Error);
}

TEST_CASE("constant growth series") {
  const auto s = constant_growth(1962, 1900, 2012, 0.02);
  CHECK(s.at(1962) == 1.0);
  CHECK(s.at(2012) == doctest::Approx(std::pow(1.02, 50)).epsilon(1e-14));
  CHECK(s.at(1900) == doctest::Approx(std::pow(1.02, -62)).epsilon(1e-14));
  CHECK_THROWS_AS(constant_growth(1800, 1900, 2012, 0.02), Error);
}
