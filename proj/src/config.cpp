#include "income_kinetics/config.hpp"

#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::config {

std::vector<Section> read_sections(const std::filesystem::path& path) {
  std::vector<Section> sections(1);
  for (const auto& line : text::read_lines(path)) {
    std::string_view body = line.text;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = text::trim(body);
    if (body.empty()) continue;
    const auto where = text::location(path, line.number);
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) fail(ErrorKind::parse, where + ": malformed section header");
      sections.push_back({std::string(text::trim(body.substr(1, body.size() - 2))), line.number, {}});
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::parse, where + ": expected 'key = value'");
    const auto key = text::trim(body.substr(0, eq));
    const auto value = text::trim(body.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::parse, where + ": empty key");
    sections.back().entries.push_back({std::string(key), std::string(value), line.number});
  }
  if (sections.front().entries.empty()) sections.erase(sections.begin());
  return sections;
}

const model::GroupConfig& RunConfig::group(const std::string& name) const {
  for (const auto& g : groups)
    if (g.name == name) return g;
  std::string known;
  for (const auto& g : groups) known += (known.empty() ? "" : ", ") + g.name;
  fail(ErrorKind::validation, "no group '" + name + "' in configuration (groups: " + known + ")");
}

model::LinearSchedule parse_schedule(const std::string& text, const std::string& context) {
  const auto parts = text::split(text, ',');
  if (parts.size() == 1 && parts[0].find(':') == std::string_view::npos)
    return model::LinearSchedule::constant(text::parse_double(parts[0], context));
  if (parts.size() != 2) fail(ErrorKind::parse, context + ": schedule must be 'value' or 'year:value, year:value'");
  double years[2]{};
  double values[2]{};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto colon = parts[k].find(':');
    if (colon == std::string_view::npos) fail(ErrorKind::parse, context + ": expected 'year:value'");
    years[k] = text::parse_double(parts[k].substr(0, colon), context);
    values[k] = text::parse_double(parts[k].substr(colon + 1), context);
  }
  if (!(years[1] > years[0])) fail(ErrorKind::validation, context + ": schedule years must increase");
  return {years[0], values[0], years[1], values[1]};
}

std::string format_schedule(const model::LinearSchedule& s) {
  if (s.is_constant()) return text::format_double(s.start_value);
  return text::format_double(s.start_year) + ":" + text::format_double(s.start_value) + ", " +
         text::format_double(s.end_year) + ":" + text::format_double(s.end_value);
}

void apply_group_setting(model::GroupConfig& g, const std::string& key, const std::string& value,
                         const std::string& context) {
  auto number = [&] { return text::parse_double(value, context); };
  if (key == "alpha_tilde") g.alpha_tilde = number();
  else if (key == "sigma_min") g.sigma_min = number();
  else if (key == "a_min") g.a_min = number();
  else if (key == "tc0") g.tc0 = number();
  else if (key == "threshold_schedule") g.pareto_threshold_schedule = parse_schedule(value, context);
  else if (key == "fl_schedule") g.fl_schedule = parse_schedule(value, context);
  else if (key == "level_a") g.decay_anchor.level_a = number();
  else if (key == "age_ta") g.decay_anchor.age_ta = number();
  else if (key == "level_b") g.retirement_anchor.level_b = number();
  else if (key == "age_tb") g.retirement_anchor.age_tb = number();
  else if (key == "ts") g.retirement_anchor.ts = number();
  else if (key == "work_start_age") g.work_start_age = number();
  else if (key == "max_age") g.max_age = number();
  else if (key == "pareto_tail_exponent") g.pareto_tail_exponent = number();
  else if (key == "persons_per_cohort") g.persons_per_cohort = number();
  else fail(ErrorKind::validation, context + ": unknown group key '" + key + "'");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig run;
  for (const auto& section : read_sections(path)) {
    const auto where = text::location(path, section.line);
    if (section.name == "run") {
      for (const auto& e : section.entries) {
        const auto ctx = text::location(path, e.line);
        const int year = static_cast<int>(text::parse_long(e.value, ctx));
        if (e.key == "base_year") run.base_year = year;
        else if (e.key == "first_year") run.first_year = year;
        else if (e.key == "last_year") run.last_year = year;
        else fail(ErrorKind::validation, ctx + ": unknown run key '" + e.key + "'");
      }
    } else if (section.name.rfind("group:", 0) == 0) {
      const std::string name(text::trim(std::string_view(section.name).substr(6)));
      if (name.empty()) fail(ErrorKind::parse, where + ": group section needs a name");
      for (const auto& g : run.groups)
        if (g.name == name) fail(ErrorKind::validation, where + ": duplicate group '" + name + "'");
      model::GroupConfig group = model::default_group();
      for (const auto& e : section.entries) {
        if (e.key != "preset") continue;
        if (e.value == "female") group = model::female_group();
        else if (e.value != "default")
          fail(ErrorKind::validation, text::location(path, e.line) + ": unknown preset '" + e.value + "'");
      }
      group.name = name;
      for (const auto& e : section.entries)
        if (e.key != "preset") apply_group_setting(group, e.key, e.value, text::location(path, e.line));
      run.groups.push_back(std::move(group));
    } else {
      fail(ErrorKind::parse, where + ": unknown section '[" + section.name + "]'");
    }
  }
  if (run.groups.empty()) fail(ErrorKind::validation, path.string() + ": configuration defines no [group:NAME] section");
  if (run.first_year > run.last_year) fail(ErrorKind::validation, path.string() + ": first_year exceeds last_year");
  return run;
}

}  // namespace ikin::config
