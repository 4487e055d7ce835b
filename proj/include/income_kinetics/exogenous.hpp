#pragma once

// Exogenous driving series: real GDP per working-age capita, normalized so the
// base year equals exactly 1.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ikin::exogenous {

using SeriesTable = std::map<int, double>;

struct PopulationRecord {
  double total = 0.0;
  double working_age = 0.0;  // persons aged 15 and above
};

using PopulationSeries = std::map<int, PopulationRecord>;

/// Column layout of a plain `year,v1,...,vn` file.
struct TableLayout {
  std::size_t value_columns = 1;
  std::string description = "year,value";
};

struct RawRow {
  int year = 0;
  std::vector<double> values;
  std::size_t line = 0;
};

/// Parses a comma-separated table; `#` lines, blank lines and a leading
/// `year,...` header row are skipped.
/// Errors: Error(io) for unreadable files, Error(parse) with file:line for a
/// malformed row, Error(validation) for an empty file or a duplicated year.
std::vector<RawRow> load_table(const std::filesystem::path& path, const TableLayout& layout);

SeriesTable load_series(const std::filesystem::path& path);
PopulationSeries load_population(const std::filesystem::path& path);

/// value(year) = gdp_per_capita(year) * total(year) / working_age(year) for
/// every year present in both inputs.
SeriesTable working_age_correction(const SeriesTable& gdp_per_capita, const PopulationSeries& populations);

/// Fills interior missing years by log-linear interpolation.
SeriesTable fill_gaps(const SeriesTable& series);

/// Years before `splice_year` come from `extension`, rescaled so it matches
/// `primary` exactly at the splice year; later years come from `primary`.
SeriesTable splice_series(const SeriesTable& primary, const SeriesTable& extension, int splice_year);

class ExogenousSeries {
 public:
  ExogenousSeries() = default;

  int base_year() const { return base_year_; }
  int first_year() const { return first_year_; }
  int last_year() const { return first_year_ + static_cast<int>(values_.size()) - 1; }
  bool empty() const { return values_.empty(); }
  bool covers(int year) const { return !values_.empty() && year >= first_year_ && year <= last_year(); }
  bool covers(int first, int last) const { return covers(first) && covers(last); }
  const std::string& source_note() const { return source_note_; }
  const std::vector<double>& values() const { return values_; }

  /// Y(year); throws Error(coverage) outside the covered range.
  double at(int year) const;
  /// Y at a fractional calendar time, geometric between annual values.
  double at_time(double calendar_time) const;

  SeriesTable to_table() const;

  friend ExogenousSeries normalize_to_base(const SeriesTable& series, int base_year, std::string source_note);

 private:
  int base_year_ = 0;
  int first_year_ = 0;
  std::vector<double> values_;
  std::string source_note_;
};

/// Divides every value by the base-year value. Interior gaps are filled first.
/// Errors: Error(coverage) if the base year is not covered, Error(validation)
/// for non-positive values.
ExogenousSeries normalize_to_base(const SeriesTable& series, int base_year, std::string source_note = {});

/// Synthetic series growing by `annual_growth` per year, equal to 1 at `base_year`.
ExogenousSeries constant_growth(int base_year, int first_year, int last_year, double annual_growth);

}  // namespace ikin::exogenous
