#include "income_kinetics/exogenous.hpp"

#include <cmath>

#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::exogenous {

std::vector<RawRow> load_table(const std::filesystem::path& path, const TableLayout& layout) {
  const auto lines = text::read_lines(path);
  std::vector<RawRow> rows;
  std::map<int, std::size_t> seen;
  for (const auto& line : lines) {
    if (text::is_blank_or_comment(line.text)) continue;
    const auto where = text::location(path, line.number);
    const auto fields = text::split(line.text, ',');
    if (rows.empty() && !fields.empty() && text::trim(fields[0]) == "year") continue;  // optional header row
    if (fields.size() != layout.value_columns + 1)
      fail(ErrorKind::parse, where + ": expected " + std::to_string(layout.value_columns + 1) +
                                 " fields (" + layout.description + "), got " + std::to_string(fields.size()));
    RawRow row;
    row.line = line.number;
    const long year = text::parse_long(fields[0], where);
    if (year < 1000 || year > 9999) fail(ErrorKind::parse, where + ": year must have four digits");
    row.year = static_cast<int>(year);
    for (std::size_t k = 1; k < fields.size(); ++k) row.values.push_back(text::parse_double(fields[k], where));
    if (auto [it, inserted] = seen.emplace(row.year, line.number); !inserted)
      fail(ErrorKind::validation, where + ": duplicate year " + std::to_string(row.year) + " (first seen on line " +
                                      std::to_string(it->second) + ")");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::validation, path.string() + ": empty input, no data rows");
  return rows;
}

SeriesTable load_series(const std::filesystem::path& path) {
  SeriesTable table;
  for (const auto& row : load_table(path, {1, "year,value"})) table.emplace(row.year, row.values[0]);
  return table;
}

PopulationSeries load_population(const std::filesystem::path& path) {
  PopulationSeries series;
  for (const auto& row : load_table(path, {2, "year,total,working_age"})) {
    const PopulationRecord rec{row.values[0], row.values[1]};
    if (!(rec.working_age > 0.0 && rec.working_age <= rec.total))
      fail(ErrorKind::validation, text::location(path, row.line) + ": need 0 < working_age <= total");
    series.emplace(row.year, rec);
  }
  return series;
}

SeriesTable working_age_correction(const SeriesTable& gdp_per_capita, const PopulationSeries& populations) {
  SeriesTable corrected;
  for (const auto& [year, value] : gdp_per_capita) {
    const auto it = populations.find(year);
    if (it == populations.end()) continue;
    const auto& pop = it->second;
    require(pop.working_age > 0.0 && pop.working_age <= pop.total, ErrorKind::validation,
            "population for " + std::to_string(year) + " violates 0 < working_age <= total");
    corrected.emplace(year, value * pop.total / pop.working_age);
  }
  require(!corrected.empty(), ErrorKind::coverage, "GDP and population series share no years");
  return corrected;
}

SeriesTable fill_gaps(const SeriesTable& series) {
  SeriesTable filled;
  for (auto it = series.begin(); it != series.end(); ++it) {
    filled.insert(*it);
    const auto next = std::next(it);
    if (next == series.end() || next->first == it->first + 1) continue;
    require(it->second > 0.0 && next->second > 0.0, ErrorKind::validation,
            "cannot interpolate across non-positive values near " + std::to_string(it->first));
    const double span = next->first - it->first;
    const double log_ratio = std::log(next->second / it->second);
    for (int year = it->first + 1; year < next->first; ++year)
      filled.emplace(year, it->second * std::exp(log_ratio * (year - it->first) / span));
  }
  return filled;
}

SeriesTable splice_series(const SeriesTable& primary, const SeriesTable& extension, int splice_year) {
  const auto p = primary.find(splice_year);
  const auto e = extension.find(splice_year);
  const auto year = std::to_string(splice_year);
  require(p != primary.end(), ErrorKind::coverage, "primary series does not cover splice year " + year);
  require(e != extension.end(), ErrorKind::coverage, "extension series does not cover splice year " + year);
  require(e->second > 0.0, ErrorKind::validation, "extension value at splice year must be positive");
  const double factor = p->second / e->second;

  SeriesTable merged;
  for (const auto& [y, v] : extension)
    if (y < splice_year) merged.emplace(y, v * factor);
  for (const auto& [y, v] : primary)
    if (y >= splice_year) merged.emplace(y, v);
  return merged;
}

double ExogenousSeries::at(int year) const {
  if (!covers(year))
    fail(ErrorKind::coverage, "exogenous series [" + std::to_string(first_year_) + ", " + std::to_string(last_year()) +
                                  "] does not cover " + std::to_string(year));
  return values_[static_cast<std::size_t>(year - first_year_)];
}

double ExogenousSeries::at_time(double calendar_time) const {
  const double floor_time = std::floor(calendar_time);
  const int year = static_cast<int>(floor_time);
  const double fraction = calendar_time - floor_time;
  const double lower = at(year);
  if (fraction == 0.0) return lower;
  const double upper = at(year + 1);
  return lower * std::exp(fraction * std::log(upper / lower));
}

SeriesTable ExogenousSeries::to_table() const {
  SeriesTable table;
  for (std::size_t k = 0; k < values_.size(); ++k) table.emplace(first_year_ + static_cast<int>(k), values_[k]);
  return table;
}

ExogenousSeries normalize_to_base(const SeriesTable& series, int base_year, std::string source_note) {
  require(!series.empty(), ErrorKind::validation, "cannot normalize an empty series");
  for (const auto& [year, value] : series)
    require(value > 0.0, ErrorKind::validation,
            "exogenous value for " + std::to_string(year) + " must be positive");
  const auto filled = fill_gaps(series);
  const auto base = filled.find(base_year);
  require(base != filled.end(), ErrorKind::coverage,
          "base year " + std::to_string(base_year) + " outside series coverage [" +
              std::to_string(filled.begin()->first) + ", " + std::to_string(filled.rbegin()->first) + "]");

  ExogenousSeries out;
  out.base_year_ = base_year;
  out.first_year_ = filled.begin()->first;
  out.source_note_ = std::move(source_note);
  out.values_.reserve(filled.size());
  const double base_value = base->second;
  for (const auto& [year, value] : filled) out.values_.push_back(year == base_year ? 1.0 : value / base_value);
  return out;
}

ExogenousSeries constant_growth(int base_year, int first_year, int last_year, double annual_growth) {
  require(first_year <= base_year && base_year <= last_year, ErrorKind::domain,
          "constant_growth: base year must lie in [first_year, last_year]");
  require(annual_growth > -1.0, ErrorKind::domain, "constant_growth: growth must exceed -100%");
  SeriesTable table;
  for (int year = first_year; year <= last_year; ++year)
    table.emplace(year, std::pow(1.0 + annual_growth, year - base_year));
  return normalize_to_base(table, base_year, "synthetic constant growth");
}

}  // namespace ikin::exogenous
