#pragma once

// Interval design for active sources. Sources activated for a common region
// are linked in a collaboration graph; each connected component must end up in
// one group, and every group gets consecutively divisible (CD) intervals: sorted
// ascending, each interval divides the next. Distance-based clustering tries
// candidate base sets, assigns components to the nearest base, and keeps the
// plan with the smallest sum over groups of ceil(sum 1/c_m).

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scpa/activation.hpp"
#include "scpa/core_model.hpp"

namespace scpa {

struct CollaborationGraph {
  std::vector<SourceId> vertices;                     // sorted
  std::vector<std::pair<SourceId, SourceId>> edges;   // first < second, sorted
  std::vector<std::vector<SourceId>> components;      // sorted by smallest member

  std::size_t count() const { return components.size(); }
};

CollaborationGraph build_graph(const ActivationResult& act);

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Extra rate paid when every member's maximum interval u_m is cut down to a
/// multiple of `base`: sum of 1/(floor(u_m/base)*base) - 1/u_m, or infinity
/// when some u_m < base.
double distance(Slot base, std::span<const SourceId> component,
                const std::map<SourceId, Slot>& max_interval);

/// Greedy divisibility chain: members ascending by u_m (ties by id), chain
/// value v starts at `base`, c_m = floor(u_m / v) * v, then v = c_m.
/// Requires base <= min u_m.
std::map<SourceId, Slot> derive_cd_intervals(
    std::span<const SourceId> members, const std::map<SourceId, Slot>& max_interval,
    Slot base);

/// True iff the values, sorted ascending, form a divisibility chain.
bool is_consecutively_divisible(std::vector<Slot> values);

struct Group {
  Slot base = 0;
  std::vector<SourceId> members;        // sorted
  std::map<SourceId, Slot> intervals;
};

struct GroupingPlan {
  std::vector<Group> groups;  // non-empty groups, ascending base
  std::vector<Slot> bases;    // the base set that produced the plan
  int objective = 0;

  std::map<SourceId, Slot> intervals() const;
};

/// ceil(sum 1/c) for one CD group, in exact integer arithmetic.
int group_channel_estimate(const std::map<SourceId, Slot>& intervals);

struct DcConfig {
  /// Largest group count tried; 0 means min(#components, #distinct u).
  std::size_t max_groups = 0;
  /// When set, group counts >= 2 only try these base sets.
  std::optional<std::vector<std::vector<Slot>>> multi_group_bases;

  /// At most 2 groups; the only 2-group base set is {2, 3}.
  static DcConfig two_bases();
};

GroupingPlan run_dc(const ActivationResult& act, const CollaborationGraph& graph,
                    const DcConfig& cfg = {});

/// Smallest tolerance for which offsets exist that keep every update of the
/// member (interval c_m) within T of each transmission of z (interval c_z):
/// c_m - gcd(c_m, c_z).
Slot min_alignment_tolerance(Slot c_m, Slot c_z);
bool alignment_feasible(Slot c_m, Slot c_z, Slot tolerance);
bool alignment_feasible(std::span<const Slot> member_intervals, Slot c_z,
                        Slot tolerance);

}  // namespace scpa
