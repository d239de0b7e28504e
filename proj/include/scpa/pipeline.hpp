#pragma once

// End-to-end scheduler: activation, interval grouping, offset search, then an
// independent check of the resulting periodic schedule in the AoI simulator.

#include <map>
#include <vector>

#include "scpa/activation.hpp"
#include "scpa/grouping.hpp"
#include "scpa/lower_bound.hpp"
#include "scpa/offsets.hpp"

namespace scpa {

struct ScpaConfig {
  ActivationConfig activation;
  DcConfig dc;
  OffsetConfig offsets;
  Slot horizon = 0;  // verification horizon; 0 selects default_horizon()
};

struct TraceSummary {
  Slot horizon = 0;
  std::vector<Slot> max_age;  // [n - 1]
  std::size_t violations = 0;
};

struct SolveReport {
  ActivationResult activation;
  CollaborationGraph graph;
  GroupingPlan grouping;
  std::map<SourceId, Slot> offsets;
  HomogeneousSchedule schedule;
  int channels = 0;
  LowerBound lower_bound;
  TraceSummary trace;
  bool feasible = false;
  bool certified = false;  // activation and offset searches both completed
};

SolveReport solve_scpa(const Instance& inst, const ScpaConfig& cfg = {});

}  // namespace scpa
