#include "income_kinetics/curve_io.hpp"

#include "income_kinetics/error.hpp"
#include "income_kinetics/text_io.hpp"

namespace ikin::curve_io {

std::string metadata_line(const stats::AgeCurve& c) {
  std::string line = "year=" + std::to_string(c.year) + ", kind=" + stats::to_string(c.kind) + ", group=" + c.group +
                     ", provenance=" + c.provenance + ", smoothed=" +
                     (c.smoothing_window > 1 ? "MA(" + std::to_string(c.smoothing_window) + ")" : std::string("none")) +
                     ", normalized=" + (c.normalized ? "true" : "false");
  if (c.threshold) line += ", threshold=" + text::format_double(*c.threshold);
  return line;
}

std::string to_csv(const stats::AgeCurve& curve, const std::vector<std::string>& header) {
  std::string out;
  for (const auto& line : header) out += "# " + line + "\n";
  out += "# " + metadata_line(curve) + "\n";
  for (const auto& flag : curve.flags) out += "# flag: " + flag + "\n";
  out += "age,value\n";
  for (const auto& p : curve.points) out += std::to_string(p.age) + "," + text::format_double(p.value) + "\n";
  return out;
}

void write(const std::filesystem::path& path, const stats::AgeCurve& curve, const std::vector<std::string>& header) {
  text::write_file(path, to_csv(curve, header));
}

namespace {

void apply_metadata(stats::AgeCurve& c, std::string_view content, const std::string& where) {
  for (const auto field : text::split(content, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = text::trim(field.substr(0, eq));
    const auto value = text::trim(field.substr(eq + 1));
    if (key == "year") c.year = static_cast<int>(text::parse_long(value, where));
    else if (key == "kind") c.kind = stats::curve_kind_from_string(std::string(value));
    else if (key == "group") c.group = value;
    else if (key == "provenance") c.provenance = value;
    else if (key == "normalized") c.normalized = value == "true";
    else if (key == "threshold") c.threshold = text::parse_double(value, where);
    else if (key == "smoothed") {
      if (value == "none") c.smoothing_window = 1;
      else if (value.size() > 4 && value.substr(0, 3) == "MA(" && value.back() == ')')
        c.smoothing_window = static_cast<int>(text::parse_long(value.substr(3, value.size() - 4), where));
      else fail(ErrorKind::parse, where + ": smoothed must be none or MA(k)");
    }
  }
}

}  // namespace

stats::AgeCurve read(const std::filesystem::path& path) {
  stats::AgeCurve curve;
  bool have_columns = false;
  for (const auto& line : text::read_lines(path)) {
    const auto where = text::location(path, line.number);
    const auto body = text::trim(line.text);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto content = text::trim(body.substr(1));
      if (content.rfind("flag:", 0) == 0) curve.flags.emplace_back(text::trim(content.substr(5)));
      else if (content.find("kind=") != std::string_view::npos) apply_metadata(curve, content, where);
      continue;
    }
    if (!have_columns) {
      if (body != "age,value") fail(ErrorKind::parse, where + ": expected column header 'age,value'");
      have_columns = true;
      continue;
    }
    const auto f = text::split(body, ',');
    if (f.size() != 2) fail(ErrorKind::parse, where + ": expected 2 fields");
    const int age = static_cast<int>(text::parse_long(f[0], where));
    if (!curve.points.empty() && age <= curve.points.back().age)
      fail(ErrorKind::parse, where + ": ages must increase");
    curve.points.push_back({age, text::parse_double(f[1], where)});
  }
  if (!have_columns) fail(ErrorKind::parse, path.string() + ": no 'age,value' header");
  return curve;
}

}  // namespace ikin::curve_io
