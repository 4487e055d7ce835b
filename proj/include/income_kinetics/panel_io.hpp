#pragma once

// Panel export: one record per (group, calendar_year, entry_year, i, j).
//
//   # <caller header lines>
//   # panel group=male base_year=1962 work_start_age=15 max_age=90 tail_exponent=3.5 persons_per_cohort=100000
//   # threshold year=1962 value=0.43
//   group,calendar_year,entry_year,i,j,m_tilde,regime
//   male,1962,1887,1,1,0.0123,retirement_decay
//
// i and j are 1-based grid indices (S_i = i + 1, L_j = j + 1). Reading
// accepts plain or gzip-compressed files.

#include <filesystem>
#include <string>
#include <vector>

#include "income_kinetics/engine.hpp"

namespace ikin::panel_io {

inline constexpr const char* kColumns = "group,calendar_year,entry_year,i,j,m_tilde,regime";

/// `header` lines are emitted as comments first. `years` empty: every year.
std::string to_csv(const engine::SimulationPanel& panel, const std::vector<std::string>& header,
                   const std::vector<int>& years = {});

void write(const std::filesystem::path& path, const engine::SimulationPanel& panel,
           const std::vector<std::string>& header, const std::vector<int>& years = {});

/// Rebuilds a panel from an export. Every cohort snapshot must carry all 841 cells.
engine::SimulationPanel read(const std::filesystem::path& path);

}  // namespace ikin::panel_io
