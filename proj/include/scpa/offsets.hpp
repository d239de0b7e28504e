#pragma once

// Offset selection for fixed CD intervals. In every region served by several
// sources, the member z with the largest interval transmits last and every
// other member's latest update must be at most T_n old when z transmits; then
// each transmission of z completes a fusion. Among offsets meeting those
// constraints the search minimizes the peak per-slot load over one
// hyperperiod, which is the number of channels needed.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "scpa/activation.hpp"
#include "scpa/core_model.hpp"

namespace scpa {

/// Intervals handed to the offset search break the divisibility the
/// constraints rely on, or the constraints admit no offsets.
class ConstraintConflict : public Error {
 public:
  using Error::Error;
};

struct FusionConstraint {
  RegionId region = 0;
  std::vector<SourceId> members;  // sorted, includes z
  SourceId z = 0;
  Slot tolerance = 0;
};

struct OffsetProblem {
  std::map<SourceId, Slot> intervals;
  std::vector<FusionConstraint> constraints;  // multi-source regions only
  Slot hyperperiod = 1;
};

struct RegionMembers {
  RegionId region = 0;
  std::vector<SourceId> members;
  Slot tolerance = 0;
};

/// Member with the largest interval; ties go to the largest id.
SourceId designate_z(std::span<const SourceId> members,
                     const std::map<SourceId, Slot>& intervals);

/// Throws ConstraintConflict when a non-z member's interval does not divide
/// the interval of z.
OffsetProblem make_offset_problem(std::map<SourceId, Slot> intervals,
                                  std::span<const RegionMembers> regions);
OffsetProblem make_offset_problem(const Instance& inst, const ActivationResult& act,
                                  const std::map<SourceId, Slot>& intervals);

/// (i * c_z + o_z - o_m) mod c_m, non-negative: how old m's latest update is
/// at the (i+1)-th transmission of z.
Slot staleness(Slot o_m, Slot c_m, Slot o_z, Slot c_z, Slot i);

bool constraints_satisfied(const std::map<SourceId, Slot>& offsets,
                           const OffsetProblem& problem);

/// Max per-slot load over slots 1..hyperperiod.
int peak_load(const std::map<SourceId, Slot>& offsets, const OffsetProblem& problem);

/// ceil(sum_m 1/c_m), at least 1 when there is any source.
int load_lower_bound(const OffsetProblem& problem);

struct OffsetConfig {
  std::uint64_t node_budget = 5'000'000;
};

struct OffsetSolution {
  std::map<SourceId, Slot> offsets;
  int channels = 0;
  bool certified = true;  // false when the node budget cut the search short
  std::uint64_t nodes = 0;
};

OffsetSolution solve_offsets(const OffsetProblem& problem, const OffsetConfig& cfg = {});

HomogeneousSchedule make_schedule(const std::map<SourceId, Slot>& intervals,
                                  const std::map<SourceId, Slot>& offsets);

}  // namespace scpa
