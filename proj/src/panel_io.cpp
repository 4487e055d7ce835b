#include "income_kinetics/panel_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::panel_io {

using engine::CohortSnapshot;
using engine::SimulationPanel;
using engine::YearSlice;

std::string to_csv(const SimulationPanel& panel, const std::vector<std::string>& header,
                   const std::vector<int>& years) {
  const auto& info = panel.info();
  std::string out;
  for (const auto& line : header) out += "# " + line + "\n";
  out += "# panel group=" + info.group + " base_year=" + std::to_string(info.base_year) +
         " work_start_age=" + std::to_string(info.work_start_age) + " max_age=" + std::to_string(info.max_age) +
         " tail_exponent=" + text::format_double(info.tail_exponent) +
         " persons_per_cohort=" + text::format_double(info.persons_per_cohort) + "\n";

  std::vector<const YearSlice*> selected;
  for (const auto& slice : panel.years())
    if (years.empty() || std::find(years.begin(), years.end(), slice.calendar_year) != years.end())
      selected.push_back(&slice);
  for (const int y : years)
    require(panel.has_year(y), ErrorKind::coverage, "panel has no year " + std::to_string(y));

  for (const auto* slice : selected)
    out += "# threshold year=" + std::to_string(slice->calendar_year) +
           " value=" + text::format_double(slice->threshold) + "\n";
  out += kColumns;
  out += '\n';

  for (const auto* slice : selected) {
    out.reserve(out.size() + slice->cohorts.size() * model::kCellCount * 48);
    const std::string year_prefix = info.group + "," + std::to_string(slice->calendar_year) + ",";
    for (const auto& snap : slice->cohorts) {
      const std::string cohort_prefix = year_prefix + std::to_string(snap.entry_year) + ",";
      for (int i = 0; i < model::kGridSide; ++i)
        for (int j = 0; j < model::kGridSide; ++j) {
          const auto k = model::cell_index(i, j);
          out += cohort_prefix;
          out += std::to_string(i + 1);
          out += ',';
          out += std::to_string(j + 1);
          out += ',';
          out += text::format_double(snap.m_tilde[k]);
          out += ',';
          out += model::to_string(snap.regime[k]);
          out += '\n';
        }
    }
  }
  return out;
}

void write(const std::filesystem::path& path, const SimulationPanel& panel, const std::vector<std::string>& header,
           const std::vector<int>& years) {
  text::write_file(path, to_csv(panel, header, years));
}

namespace {

std::map<std::string, std::string> key_values(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos) kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

}  // namespace

SimulationPanel read(const std::filesystem::path& path) {
  engine::PanelInfo info;
  bool have_info = false;
  bool have_columns = false;
  std::map<int, double> thresholds;
  // year -> entry -> snapshot, plus a per-snapshot count of filled cells
  std::map<int, std::map<int, std::pair<CohortSnapshot, int>>> cells;

  for (const auto& line : text::read_lines(path)) {
    const auto where = text::location(path, line.number);
    const auto body = text::trim(line.text);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto content = text::trim(body.substr(1));
      if (content.rfind("panel ", 0) == 0) {
        auto kv = key_values(content);
        info.group = kv["group"];
        info.base_year = static_cast<int>(text::parse_long(kv["base_year"], where));
        info.work_start_age = static_cast<int>(text::parse_long(kv["work_start_age"], where));
        info.max_age = static_cast<int>(text::parse_long(kv["max_age"], where));
        info.tail_exponent = text::parse_double(kv["tail_exponent"], where);
        info.persons_per_cohort = text::parse_double(kv["persons_per_cohort"], where);
        have_info = true;
      } else if (content.rfind("threshold ", 0) == 0) {
        auto kv = key_values(content);
        thresholds[static_cast<int>(text::parse_long(kv["year"], where))] = text::parse_double(kv["value"], where);
      }
      continue;
    }
    if (!have_columns) {
      if (body != kColumns) fail(ErrorKind::parse, where + ": expected column header '" + std::string(kColumns) + "'");
      have_columns = true;
      continue;
    }
    if (!have_info) fail(ErrorKind::parse, where + ": panel metadata comment missing before data rows");
    const auto f = text::split(body, ',');
    if (f.size() != 7) fail(ErrorKind::parse, where + ": expected 7 fields");
    if (f[0] != info.group) fail(ErrorKind::parse, where + ": group '" + std::string(f[0]) + "' differs from header");
    const int year = static_cast<int>(text::parse_long(f[1], where));
    const int entry = static_cast<int>(text::parse_long(f[2], where));
    const long i = text::parse_long(f[3], where);
    const long j = text::parse_long(f[4], where);
    if (i < 1 || i > model::kGridSide || j < 1 || j > model::kGridSide)
      fail(ErrorKind::parse, where + ": grid index out of range 1..29");
    if (year < entry || year - entry > info.max_age - info.work_start_age)
      fail(ErrorKind::parse, where + ": entry year inconsistent with calendar year");
    auto& [snap, filled] = cells[year][entry];
    snap.entry_year = entry;
    snap.experience = year - entry;
    snap.person_weight = info.persons_per_cohort / model::kCellCount;
    const auto k = model::cell_index(static_cast<int>(i - 1), static_cast<int>(j - 1));
    snap.m_tilde[k] = text::parse_double(f[5], where);
    snap.regime[k] = model::regime_from_string(std::string(f[6]));
    ++filled;
  }
  if (!have_info || !have_columns) fail(ErrorKind::parse, path.string() + ": not a panel export");

  std::vector<YearSlice> slices;
  for (auto& [year, cohorts] : cells) {
    YearSlice slice;
    slice.calendar_year = year;
    const auto t = thresholds.find(year);
    if (t == thresholds.end()) fail(ErrorKind::parse, path.string() + ": no threshold line for " + std::to_string(year));
    slice.threshold = t->second;
    // Cohorts ordered by experience 0, 1, ...; entry years descend.
    for (auto it = cohorts.rbegin(); it != cohorts.rend(); ++it) {
      auto& [snap, filled] = it->second;
      if (filled != model::kCellCount)
        fail(ErrorKind::parse, path.string() + ": cohort " + std::to_string(snap.entry_year) + " in " +
                                   std::to_string(year) + " has " + std::to_string(filled) + " cells, expected 841");
      if (snap.experience != static_cast<int>(slice.cohorts.size()))
        fail(ErrorKind::parse, path.string() + ": year " + std::to_string(year) + " misses a cohort at experience " +
                                   std::to_string(slice.cohorts.size()));
      slice.cohorts.push_back(snap);
    }
    slices.push_back(std::move(slice));
  }
  return SimulationPanel(std::move(info), std::move(slices));
}

}  // namespace ikin::panel_io
