#pragma once

// Three-case sweep over random grid scenarios (loose tolerance, tight
// tolerance, no fusion), with the rule that a fusion case never reports more
// channels than the no-fusion policy for the same draw.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scpa/grouping.hpp"
#include "scpa/pipeline.hpp"
#include "scpa/scenario.hpp"

namespace scpa {

struct ExperimentConfig {
  int width = 6;
  int height = 6;
  std::vector<int> coverages{1, 2, 3};
  std::vector<ToleranceMode> cases{ToleranceMode::Case1, ToleranceMode::Case2,
                                   ToleranceMode::Case3};
  int trials = 50;
  Slot d_lo = 2;
  Slot d_hi = 10;
  std::uint64_t seed = 1;
  CoverageShape shape = CoverageShape::Straight;
  DcConfig dc = DcConfig::two_bases();
  unsigned jobs = 1;  // worker threads; 0 picks hardware concurrency
};

/// Throws Error on an invalid configuration.
void validate_config(const ExperimentConfig& cfg);

struct ExperimentRow {
  int coverage = 0;
  std::optional<int> trial;  // empty on the per-(coverage, case) mean row
  ToleranceMode mode = ToleranceMode::Case1;
  double channels = 0.0;     // reported K (after the fallback rule)
  int solved_channels = 0;   // K of the case's own policy
  double lower_bound = 0.0;
  double gap_pct = 0.0;
  double num_active = 0.0;
  bool feasible = false;
  std::string solver;
  std::string error;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

/// Per-trial rows for one topology draw, in case order.
std::vector<ExperimentRow> run_trial(const ExperimentConfig& cfg, int coverage, int trial);

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

/// Channel table: one row per channel, columns are slots 1..horizon, idle
/// cells shown as "□". A zero horizon shows one hyperperiod (at least 12
/// slots). Empty schedules render as an empty string.
std::vector<std::vector<std::string>> table_cells(const HomogeneousSchedule& s,
                                                  SourceId num_sources, Slot horizon = 0);
std::string render_table(const HomogeneousSchedule& s, SourceId num_sources, Slot horizon = 0);
std::string render_table(const SolveReport& report, Slot horizon = 0);

}  // namespace scpa
