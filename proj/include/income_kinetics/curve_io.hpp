#pragma once

// Curve file:
//
//   # <caller header lines>
//   # year=1962, kind=mean_income, group=male, provenance=simulated, smoothed=MA(7), normalized=true
//   # flag: age 17: zero denominator, omitted
//   age,value
//   15,0.0123
//
// pareto_share curves add `threshold=<value>` to the metadata line.

#include <filesystem>
#include <string>
#include <vector>

#include "income_kinetics/statistics.hpp"

namespace ikin::curve_io {

std::string metadata_line(const stats::AgeCurve& curve);
std::string to_csv(const stats::AgeCurve& curve, const std::vector<std::string>& header = {});
void write(const std::filesystem::path& path, const stats::AgeCurve& curve, const std::vector<std::string>& header = {});

/// Reads a curve file. A missing metadata line leaves the defaults in place,
/// so a bare `age,value` table is accepted as an unsmoothed, unnormalized curve.
stats::AgeCurve read(const std::filesystem::path& path);

}  // namespace ikin::curve_io
