#include "income_kinetics/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::stats {

const char* to_string(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::mean_income: return "mean_income";
    case CurveKind::pareto_share: return "pareto_share";
    case CurveKind::ratio: return "ratio";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(const std::string& text) {
  if (text == "mean_income") return CurveKind::mean_income;
  if (text == "pareto_share") return CurveKind::pareto_share;
  if (text == "ratio") return CurveKind::ratio;
  fail(ErrorKind::validation, "unknown curve kind '" + text + "'; valid kinds: mean_income, pareto_share, ratio");
}

std::vector<int> AgeCurve::ages() const {
  std::vector<int> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.age);
  return out;
}

std::vector<double> AgeCurve::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

std::optional<double> AgeCurve::value_at(int age) const {
  const auto it = std::lower_bound(points.begin(), points.end(), age,
                                   [](const CurvePoint& p, int a) { return p.age < a; });
  if (it == points.end() || it->age != age) return std::nullopt;
  return it->value;
}

AgeSample sample_from_panel(const engine::SimulationPanel& panel, int year, bool tail_overlay) {
  const auto& slice = panel.year(year);
  const auto& info = panel.info();
  const double tail_mean = engine::tail_conditional_mean(slice.threshold, info.tail_exponent);

  AgeSample sample;
  sample.year = year;
  sample.group = info.group;
  sample.provenance = "simulated";
  sample.records.reserve(slice.cohorts.size() * model::kCellCount);
  for (const auto& snap : slice.cohorts) {
    const int age = info.work_start_age + snap.experience;
    for (const double m : snap.m_tilde) {
      const double income = tail_overlay && m >= slice.threshold ? tail_mean : m;
      sample.records.push_back({age, income, snap.person_weight});
    }
  }
  return sample;
}

namespace {

AgeCurve blank_curve(const AgeSample& sample, CurveKind kind) {
  AgeCurve c;
  c.year = sample.year;
  c.kind = kind;
  c.group = sample.group;
  c.provenance = sample.provenance;
  return c;
}

// Accumulates (sum of weight * f(income), sum of weight) per age in fixed age order.
template <typename F>
std::map<int, std::pair<double, double>> accumulate(const AgeSample& sample, F f) {
  std::map<int, std::pair<double, double>> cells;
  for (const auto& r : sample.records) {
    auto& [num, den] = cells[r.age];
    num += r.weight * f(r.income);
    den += r.weight;
  }
  return cells;
}

}  // namespace

AgeCurve mean_income_by_age(const AgeSample& sample) {
  AgeCurve curve = blank_curve(sample, CurveKind::mean_income);
  for (const auto& [age, sums] : accumulate(sample, [](double x) { return x; }))
    if (sums.second > 0.0) curve.points.push_back({age, sums.first / sums.second});
  if (curve.points.empty()) curve.flags.push_back("empty group after filtering");
  return curve;
}

AgeCurve pareto_share_by_age(const AgeSample& sample, double threshold) {
  AgeCurve curve = blank_curve(sample, CurveKind::pareto_share);
  curve.threshold = threshold;
  for (const auto& [age, sums] : accumulate(sample, [threshold](double x) { return x >= threshold ? 1.0 : 0.0; }))
    if (sums.second > 0.0) curve.points.push_back({age, std::clamp(sums.first / sums.second, 0.0, 1.0)});
  if (curve.points.empty()) curve.flags.push_back("empty group after filtering");
  return curve;
}

AgeCurve mean_income_by_age(const engine::SimulationPanel& panel, int year) {
  return mean_income_by_age(sample_from_panel(panel, year, true));
}

AgeCurve pareto_share_by_age(const engine::SimulationPanel& panel, int year, std::optional<double> threshold) {
  const double t = threshold.value_or(panel.year(year).threshold);
  return pareto_share_by_age(sample_from_panel(panel, year, false), t);
}

AgeCurve moving_average(const AgeCurve& curve, int window) {
  require(window >= 1 && window % 2 == 1, ErrorKind::domain,
          "moving_average: window must be odd and positive (got " + std::to_string(window) + ")");
  AgeCurve out = curve;
  out.smoothing_window = window;
  if (curve.points.empty() || window == 1) return out;

  const int half = window / 2;
  const int first = curve.points.front().age;
  const int last = curve.points.back().age;
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const int age = curve.points[k].age;
    const int reach = std::min({half, age - first, last - age});
    double sum = 0.0;
    int n = 0;
    for (const auto& p : curve.points)
      if (p.age >= age - reach && p.age <= age + reach) {
        sum += p.value;
        ++n;
      }
    out.points[k].value = sum / n;
  }
  return out;
}

std::size_t peak_index(const AgeCurve& curve) {
  require(!curve.points.empty(), ErrorKind::domain, "peak of an empty curve");
  const auto it = std::max_element(curve.points.begin(), curve.points.end(),
                                   [](const CurvePoint& a, const CurvePoint& b) { return a.value < b.value; });
  return static_cast<std::size_t>(it - curve.points.begin());
}

AgeCurve normalize_to_peak(const AgeCurve& curve) {
  require(!curve.points.empty(), ErrorKind::domain, "normalize_to_peak: degenerate curve, no points");
  const double peak = curve.points[peak_index(curve)].value;
  require(peak > 0.0, ErrorKind::domain, "normalize_to_peak: degenerate curve, maximum is not positive");
  AgeCurve out = curve;
  out.normalized = true;
  for (auto& p : out.points) p.value = p.value == peak ? 1.0 : p.value / peak;
  return out;
}

AgeCurve group_ratio(const AgeCurve& a, const AgeCurve& b) {
  require(a.year == b.year, ErrorKind::alignment,
          "group_ratio: curves are for different years (" + std::to_string(a.year) + " vs " +
              std::to_string(b.year) + ")");
  AgeCurve out;
  out.year = a.year;
  out.kind = CurveKind::ratio;
  out.group = a.group + "/" + b.group;
  out.provenance = a.provenance == b.provenance ? a.provenance : a.provenance + "/" + b.provenance;
  out.smoothing_window = a.smoothing_window;
  out.normalized = false;
  bool shared = false;
  for (const auto& p : a.points) {
    const auto denominator = b.value_at(p.age);
    if (!denominator) continue;
    shared = true;
    if (*denominator == 0.0) {
      out.flags.push_back("age " + std::to_string(p.age) + ": zero denominator, omitted");
      continue;
    }
    out.points.push_back({p.age, p.value / *denominator});
  }
  require(shared, ErrorKind::alignment, "group_ratio: curves share no ages");
  return out;
}

AgeCurve post_process(const AgeCurve& curve, int window, bool normalize) {
  AgeCurve out = moving_average(curve, window);
  return normalize ? normalize_to_peak(out) : out;
}

Comparison compare_curves(const AgeCurve& model, const AgeCurve& empirical) {
  Comparison out;
  for (const auto& p : model.points) {
    const auto e = empirical.value_at(p.age);
    if (!e) continue;
    const double r = p.value - *e;
    out.rows.push_back({p.age, p.value, *e, r});
    out.max_abs = std::max(out.max_abs, std::abs(r));
    out.ssr += r * r;
  }
  require(!out.rows.empty(), ErrorKind::alignment, "compare: model and empirical curves share no ages");
  out.rms = std::sqrt(out.ssr / static_cast<double>(out.rows.size()));
  return out;
}

GroupFilter GroupFilter::parse(const std::string& label) {
  GroupFilter f;
  if (label.empty() || label == "all") return f;
  for (const char ch : label) {
    switch (ch) {
      case 'M':
      case 'F':
        require(!f.gender, ErrorKind::validation, "group filter '" + label + "' names two genders");
        f.gender = ch;
        break;
      case 'W':
      case 'B':
        require(!f.race, ErrorKind::validation, "group filter '" + label + "' names two races");
        f.race = ch == 'W' ? 100 : 200;
        break;
      default:
        fail(ErrorKind::validation, "group filter '" + label + "': use all, M, F, W, B or a race+gender pair like BF");
    }
  }
  return f;
}

bool GroupFilter::matches(const MicrodataRecord& r) const {
  return (!gender || *gender == r.gender) && (!race || *race == r.race);
}

AgeSample sample_from_microdata(const MicrodataSet& data, int year, const GroupFilter& filter,
                                const std::string& label) {
  AgeSample sample;
  sample.year = year;
  sample.group = label;
  sample.provenance = "microdata";
  for (const auto& r : data.records)
    if (r.year == year && filter.matches(r)) sample.records.push_back({r.age, r.income, r.weight});
  return sample;
}

MicrodataSet ingest_microdata(const std::filesystem::path& path, const MicrodataSchema& schema) {
  MicrodataSet set;
  const auto lines = text::read_lines(path);
  auto it = std::find_if(lines.begin(), lines.end(), [](const text::Line& l) { return !text::is_blank_or_comment(l.text); });
  if (it == lines.end()) {
    set.warnings.push_back(path.string() + ": empty microdata file");
    return set;
  }

  const auto header = text::split(it->text, ',');
  auto column = [&](const std::string& name) {
    const auto pos = std::find(header.begin(), header.end(), name);
    if (pos == header.end())
      fail(ErrorKind::parse, text::location(path, it->number) + ": header lacks column '" + name + "'");
    return static_cast<std::size_t>(pos - header.begin());
  };
  const std::size_t c_year = column(schema.year), c_age = column(schema.age), c_income = column(schema.income),
                    c_gender = column(schema.gender), c_race = column(schema.race), c_weight = column(schema.weight);

  for (++it; it != lines.end(); ++it) {
    if (text::is_blank_or_comment(it->text)) continue;
    const auto where = text::location(path, it->number);
    const auto fields = text::split(it->text, ',');
    if (fields.size() != header.size())
      fail(ErrorKind::parse, where + ": expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    MicrodataRecord r;
    r.year = static_cast<int>(text::parse_long(fields[c_year], where));
    r.age = static_cast<int>(text::parse_long(fields[c_age], where));
    r.income = text::parse_double(fields[c_income], where);
    r.race = static_cast<int>(text::parse_long(fields[c_race], where));
    r.weight = text::parse_double(fields[c_weight], where);
    const auto gender = fields[c_gender];
    if (gender != "M" && gender != "F")
      fail(ErrorKind::parse, where + ": gender must be M or F, got '" + std::string(gender) + "'");
    r.gender = gender.front();

    std::string problem;
    if (r.income < 0.0) problem = "negative income";
    else if (r.weight < 0.0) problem = "negative weight";
    else if (r.age < 0) problem = "negative age";
    if (!problem.empty()) {
      ++set.rejected;
      set.warnings.push_back(where + ": rejected, " + problem);
      continue;
    }
    set.records.push_back(r);
  }
  return set;
}

}  // namespace ikin::stats
