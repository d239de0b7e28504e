#pragma once

// Domain types shared by every stage of the scheduler: instances (regions,
// deadlines, fusion tolerances, source sets), homogeneous periodic schedules
// and finite schedule windows, plus the small integer helpers they rely on.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scpa {

using SourceId = std::int32_t;
using RegionId = std::int32_t;
using Slot = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an lcm (hyperperiod) no longer fits in a Slot.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// One monitored region. Source ids are 1-based; `direct` and each combo are
/// kept sorted.
struct RegionSpec {
  RegionId id = 0;
  Slot deadline = 0;   // hard AoI bound d_n
  Slot tolerance = 0;  // max generation-time spread T_n for a fusion
  std::vector<SourceId> direct;
  std::vector<std::vector<SourceId>> combos;

  bool operator==(const RegionSpec&) const = default;
};

struct Instance {
  std::vector<RegionSpec> regions;  // regions[i].id == i + 1
  SourceId num_sources = 0;
  std::string label;

  std::size_t num_regions() const { return regions.size(); }
  const RegionSpec& region(RegionId id) const;
  Slot max_deadline() const;

  bool operator==(const Instance&) const = default;
};

struct Violation {
  std::string what;
  RegionId region = 0;  // 0 when not tied to a region
  std::vector<SourceId> sources;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool mentions(std::string_view what) const;
  std::string to_string() const;
};

struct ValidationOptions {
  // Activation-level fixtures describe combo-only regions; they relax F_n != {}.
  bool require_direct_source = true;
};

ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& opts = {});

// Integer helpers. gcd/lcm require positive arguments; lcm throws
// OverflowError instead of wrapping.
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t lcm_all(std::span<const std::int64_t> values);
/// a mod m in [0, m) for m > 0, also for negative a.
std::int64_t positive_mod(std::int64_t a, std::int64_t m);

struct Timing {
  Slot interval = 0;
  Slot offset = 0;

  bool operator==(const Timing&) const = default;
};

/// Fixed interval and first-transmission offset per scheduled source.
/// Sources missing from the map never transmit.
class HomogeneousSchedule {
 public:
  HomogeneousSchedule() = default;

  /// Throws Error unless 1 <= offset <= interval.
  void set(SourceId m, Slot interval, Slot offset);
  std::optional<Timing> find(SourceId m) const;
  const std::map<SourceId, Timing>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// lcm of all intervals; 1 for the empty schedule.
  Slot hyperperiod() const;

  bool operator==(const HomogeneousSchedule&) const = default;

 private:
  std::map<SourceId, Timing> entries_;
};

/// U_m(t): true iff t is one of o_m, o_m + c_m, o_m + 2c_m, ...
bool decision_at(const HomogeneousSchedule& s, SourceId m, Slot t);

/// Periodic form of the decision rule (ignores t >= o_m); used when counting
/// steady-state load over one hyperperiod.
bool periodic_decision_at(const Timing& timing, Slot t);

/// Finite T x M decision matrix with an optional per-slot channel layout.
struct ScheduleWindow {
  Slot horizon = 0;
  SourceId num_sources = 0;
  std::vector<std::vector<std::uint8_t>> decisions;  // [t - 1][m - 1]
  // [t - 1][k] = source on channel k + 1, 0 when idle. Empty when unassigned.
  std::vector<std::vector<SourceId>> channels;

  static ScheduleWindow empty(SourceId num_sources, Slot horizon);

  bool scheduled(SourceId m, Slot t) const;
  void schedule(SourceId m, Slot t);
  int load(Slot t) const;
  int max_load() const;
  std::size_t num_channels() const;
};

ScheduleWindow make_window(const HomogeneousSchedule& s, SourceId num_sources,
                           Slot horizon);

/// Spreadsheet-style labels: 1 -> A, 26 -> Z, 27 -> AA.
std::string source_label(SourceId m);
std::optional<SourceId> parse_source_label(std::string_view label);

}  // namespace scpa
