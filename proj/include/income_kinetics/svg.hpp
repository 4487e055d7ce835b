#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "income_kinetics/statistics.hpp"

namespace ikin::svg {

struct Series {
  std::string label;
  std::vector<stats::CurvePoint> points;
};

/// Line chart of one or more age curves on shared axes.
std::string render(const std::vector<Series>& series, const std::string& title, const std::string& y_label);

void write(const std::filesystem::path& path, const std::vector<Series>& series, const std::string& title,
           const std::string& y_label);

}  // namespace ikin::svg
