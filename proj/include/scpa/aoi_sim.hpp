#pragma once

// Slot-by-slot simulator for the region age recursion. A region's age resets
// to 1 in slot t + 1 when one of its direct sources transmits in slot t, or
// when some combo has a member transmitting in slot t and the latest updates
// of all its members were generated within the region's tolerance. Updates
// sent in slot t are received at the end of t and are usable for fusions
// evaluated for slot t.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scpa/core_model.hpp"

namespace scpa {

struct AgeViolation {
  RegionId region = 0;
  Slot slot = 0;
  Slot age = 0;
};

struct AoITrace {
  Slot horizon = 0;
  std::vector<std::vector<Slot>> ages;  // ages[n - 1][t - 1] = A_n(t)
  std::vector<AgeViolation> violations;

  Slot age(RegionId n, Slot t) const;
  Slot max_age(RegionId n) const;
  bool feasible() const { return violations.empty(); }
  std::optional<Slot> first_violation(RegionId n) const;
};

/// g(m, t): latest slot t' <= t in which m transmitted.
std::optional<Slot> latest_generation_time(const HomogeneousSchedule& s,
                                           SourceId m, Slot t);
std::optional<Slot> latest_generation_time(const ScheduleWindow& w,
                                           SourceId m, Slot t);

/// Ages for slot t + 1 given ages for slot t.
std::vector<Slot> step_aoi(const Instance& inst, const HomogeneousSchedule& s,
                           Slot t, std::span<const Slot> ages);
std::vector<Slot> step_aoi(const Instance& inst, const ScheduleWindow& w,
                           Slot t, std::span<const Slot> ages);

/// Runs the recursion from A_n(1) = 1 for slots 1..horizon.
AoITrace simulate(const Instance& inst, const HomogeneousSchedule& s,
                  Slot horizon);
/// Same, driven by an explicit (not necessarily periodic) decision matrix.
AoITrace simulate(const Instance& inst, const ScheduleWindow& w);

/// 2 * hyperperiod + max deadline; long enough to expose any violation of a
/// periodic schedule.
Slot default_horizon(const Instance& inst, const HomogeneousSchedule& s);

/// Peak number of simultaneous transmissions over one hyperperiod.
/// Returns 0 for the empty schedule.
int required_channels(const HomogeneousSchedule& s);

/// First-fit channel layout: in each slot the scheduled sources, sorted by id,
/// take channels 1..K where K = required_channels(s). A zero horizon means one
/// hyperperiod.
ScheduleWindow assign_channels(const HomogeneousSchedule& s,
                               SourceId num_sources, Slot horizon = 0);

/// CSV with header "t,A_1,...,A_N".
std::string trace_csv(const AoITrace& trace);

}  // namespace scpa
