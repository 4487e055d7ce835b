#pragma once

// Diagnostic age curves. Simulated panels and survey microdata are both
// reduced to an AgeSample (weighted incomes by one-year age cell) and every
// curve is computed from that sample, so the two sources share one code path.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "income_kinetics/engine.hpp"

namespace ikin::stats {

enum class CurveKind { mean_income, pareto_share, ratio };

const char* to_string(CurveKind kind) noexcept;
/// Throws Error(validation) listing the valid kinds.
CurveKind curve_kind_from_string(const std::string& text);

struct CurvePoint {
  int age = 0;
  double value = 0.0;
};

struct AgeCurve {
  int year = 0;
  CurveKind kind = CurveKind::mean_income;
  std::string group;
  std::string provenance;             // "simulated" or "microdata"
  int smoothing_window = 1;           // 1: unsmoothed
  bool normalized = false;
  std::optional<double> threshold;    // pareto_share curves
  std::vector<CurvePoint> points;     // ages strictly increasing
  std::vector<std::string> flags;     // e.g. ages dropped for a zero denominator

  std::vector<int> ages() const;
  std::vector<double> values() const;
  std::optional<double> value_at(int age) const;
};

struct WeightedIncome {
  int age = 0;
  double income = 0.0;
  double weight = 0.0;
};

struct AgeSample {
  int year = 0;
  std::string group;
  std::string provenance;
  std::vector<WeightedIncome> records;
};

/// Panel records for one year, one per cell, weighted by persons per cell.
/// With `tail_overlay`, incomes at or above the panel's threshold are
/// replaced by the Pareto conditional mean above that threshold.
AgeSample sample_from_panel(const engine::SimulationPanel& panel, int year, bool tail_overlay);

/// Weighted mean income per one-year age cell. Ages with no records or zero
/// total weight are absent. An empty sample yields an empty, flagged curve.
AgeCurve mean_income_by_age(const AgeSample& sample);

/// Weighted fraction at or above `threshold` per one-year age cell.
AgeCurve pareto_share_by_age(const AgeSample& sample, double threshold);

/// Panel conveniences: mean income includes the tail overlay; the share uses
/// the panel's own threshold unless one is given.
AgeCurve mean_income_by_age(const engine::SimulationPanel& panel, int year);
AgeCurve pareto_share_by_age(const engine::SimulationPanel& panel, int year, std::optional<double> threshold = {});

/// Centered moving average over a window of `window` ages. Near the ends the
/// window shrinks symmetrically to the available ages. Throws Error(domain)
/// for an even or non-positive window.
AgeCurve moving_average(const AgeCurve& curve, int window = 7);

/// Divides by the curve maximum. Throws Error(domain) if the maximum is not positive.
AgeCurve normalize_to_peak(const AgeCurve& curve);

/// Pointwise a / b over shared ages. Ages where b == 0 are dropped and flagged.
/// Throws Error(alignment) for different years or disjoint age grids.
AgeCurve group_ratio(const AgeCurve& a, const AgeCurve& b);

/// Optional smoothing then optional normalization, in that order.
AgeCurve post_process(const AgeCurve& curve, int window, bool normalize);

/// Index of the maximum value (first one on ties). Throws on an empty curve.
std::size_t peak_index(const AgeCurve& curve);

struct Residual {
  int age = 0;
  double model = 0.0;
  double empirical = 0.0;
  double residual = 0.0;  // model - empirical
};

struct Comparison {
  std::vector<Residual> rows;  // shared ages only
  double max_abs = 0.0;
  double rms = 0.0;
  double ssr = 0.0;
};

/// Per-age residuals on the shared age grid. Throws Error(alignment) if the
/// curves share no ages.
Comparison compare_curves(const AgeCurve& model, const AgeCurve& empirical);

// ---------------------------------------------------------------------------
// Microdata

struct MicrodataRecord {
  int year = 0;
  int age = 0;
  double income = 0.0;
  char gender = 'M';  // 'M' or 'F'
  int race = 0;       // 100 white, 200 black
  double weight = 0.0;
};

/// Column names for `ingest_microdata`; order in the file is free.
struct MicrodataSchema {
  std::string year = "year";
  std::string age = "age";
  std::string income = "income";
  std::string gender = "gender";
  std::string race = "race";
  std::string weight = "weight";
};

struct MicrodataSet {
  std::vector<MicrodataRecord> records;
  std::size_t rejected = 0;
  std::vector<std::string> warnings;  // one per rejected row, plus an empty-file warning
};

/// Reads a header row naming the schema columns followed by data rows.
/// Rows with negative income, weight or age are rejected and counted.
/// Structural problems throw Error(parse) with file:line.
MicrodataSet ingest_microdata(const std::filesystem::path& path, const MicrodataSchema& schema = {});

/// Group filter such as "all", "M", "F", "WM", "BF", "W", "B".
struct GroupFilter {
  std::optional<char> gender;
  std::optional<int> race;

  static GroupFilter parse(const std::string& label);
  bool matches(const MicrodataRecord& r) const;
};

AgeSample sample_from_microdata(const MicrodataSet& data, int year, const GroupFilter& filter,
                                const std::string& label);

}  // namespace ikin::stats
