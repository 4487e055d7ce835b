#pragma once

// Flat key-value configuration with one section per group:
//
//   [run]
//   base_year = 1962
//   first_year = 1962
//   last_year = 2012
//
//   [group:female]
//   preset = female            # optional starting point: default | female
//   tc0 = 25
//   fl_schedule = 1962:0.45, 2014:0.65
//   threshold_schedule = 1960:0.29, 2014:0.39
//
// `#` starts a comment. Unknown keys are errors.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "income_kinetics/model.hpp"

namespace ikin::config {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;  // text between the brackets; "" for entries before any header
  std::size_t line = 0;
  std::vector<Entry> entries;
};

/// Splits a key-value file into sections. Throws Error(parse) with file:line.
std::vector<Section> read_sections(const std::filesystem::path& path);

struct RunConfig {
  int base_year = 1962;
  int first_year = 1962;
  int last_year = 2012;
  std::vector<model::GroupConfig> groups;

  /// Throws Error(validation) if absent.
  const model::GroupConfig& group(const std::string& name) const;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// "0.43" (constant) or "1962:0.45, 2014:0.65".
model::LinearSchedule parse_schedule(const std::string& text, const std::string& context);
std::string format_schedule(const model::LinearSchedule& schedule);

/// Applies one `key = value` assignment to a group. Throws Error(validation)
/// for unknown keys and Error(parse) for malformed values.
void apply_group_setting(model::GroupConfig& group, const std::string& key, const std::string& value,
                         const std::string& context);

}  // namespace ikin::config
