#include "scpa/aoi_sim.hpp"

#include <algorithm>
#include <sstream>

namespace scpa {

Slot AoITrace::age(RegionId n, Slot t) const {
  return ages.at(static_cast<std::size_t>(n - 1))
      .at(static_cast<std::size_t>(t - 1));
}

Slot AoITrace::max_age(RegionId n) const {
  const auto& row = ages.at(static_cast<std::size_t>(n - 1));
  return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
}

std::optional<Slot> AoITrace::first_violation(RegionId n) const {
  for (const auto& v : violations) {
    if (v.region == n) return v.slot;
  }
  return std::nullopt;
}

std::optional<Slot> latest_generation_time(const HomogeneousSchedule& s,
                                           SourceId m, Slot t) {
  auto timing = s.find(m);
  if (!timing || t < timing->offset) return std::nullopt;
  return t - (t - timing->offset) % timing->interval;
}

std::optional<Slot> latest_generation_time(const ScheduleWindow& w,
                                           SourceId m, Slot t) {
  for (Slot u = std::min(t, w.horizon); u >= 1; --u) {
    if (w.scheduled(m, u)) return u;
  }
  return std::nullopt;
}

namespace {

// `sent(m)` tells whether m transmits in slot t; `last(m)` is g(m, t).
template <class Sent, class Last>
std::vector<Slot> step_impl(const Instance& inst, Slot t,
                            std::span<const Slot> ages, Sent&& sent,
                            Last&& last) {
  if (ages.size() != inst.regions.size()) {
    throw Error("step_aoi: ages vector must have one entry per region");
  }
  std::vector<Slot> next(ages.size());
  for (std::size_t i = 0; i < inst.regions.size(); ++i) {
    const RegionSpec& r = inst.regions[i];
    bool refreshed = std::any_of(r.direct.begin(), r.direct.end(), sent);
    for (std::size_t j = 0; !refreshed && j < r.combos.size(); ++j) {
      const auto& combo = r.combos[j];
      if (!std::any_of(combo.begin(), combo.end(), sent)) continue;
      Slot oldest = t;
      bool complete = true;
      for (SourceId m : combo) {
        std::optional<Slot> g = last(m);
        if (!g) {
          complete = false;
          break;
        }
        oldest = std::min(oldest, *g);
      }
      refreshed = complete && t - oldest <= r.tolerance;
    }
    next[i] = refreshed ? 1 : ages[i] + 1;
  }
  return next;
}

template <class Sent, class Last>
AoITrace simulate_impl(const Instance& inst, Slot horizon, Sent&& sent_at,
                       Last&& last_at) {
  if (horizon < 1) throw Error("simulate: horizon must be >= 1");
  const std::size_t n = inst.regions.size();
  AoITrace trace;
  trace.horizon = horizon;
  trace.ages.assign(n, std::vector<Slot>(static_cast<std::size_t>(horizon)));

  std::vector<Slot> ages(n, 1);
  for (Slot t = 1;; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      trace.ages[i][static_cast<std::size_t>(t - 1)] = ages[i];
      if (ages[i] > inst.regions[i].deadline) {
        trace.violations.push_back({inst.regions[i].id, t, ages[i]});
      }
    }
    if (t == horizon) break;
    ages = step_impl(
        inst, t, ages, [&](SourceId m) { return sent_at(m, t); },
        [&](SourceId m) { return last_at(m, t); });
  }
  return trace;
}

}  // namespace

std::vector<Slot> step_aoi(const Instance& inst, const HomogeneousSchedule& s,
                           Slot t, std::span<const Slot> ages) {
  return step_impl(
      inst, t, ages, [&](SourceId m) { return decision_at(s, m, t); },
      [&](SourceId m) { return latest_generation_time(s, m, t); });
}

std::vector<Slot> step_aoi(const Instance& inst, const ScheduleWindow& w,
                           Slot t, std::span<const Slot> ages) {
  return step_impl(
      inst, t, ages, [&](SourceId m) { return w.scheduled(m, t); },
      [&](SourceId m) { return latest_generation_time(w, m, t); });
}

AoITrace simulate(const Instance& inst, const HomogeneousSchedule& s,
                  Slot horizon) {
  return simulate_impl(
      inst, horizon,
      [&](SourceId m, Slot t) { return decision_at(s, m, t); },
      [&](SourceId m, Slot t) { return latest_generation_time(s, m, t); });
}

AoITrace simulate(const Instance& inst, const ScheduleWindow& w) {
  // Generation times are tracked incrementally; the window is scanned once.
  std::vector<std::optional<Slot>> last(
      static_cast<std::size_t>(std::max<SourceId>(w.num_sources, 0)) + 1);
  Slot seen = 0;
  auto refresh = [&](Slot t) {
    for (; seen < t; ++seen) {
      for (SourceId m = 1; m <= w.num_sources; ++m) {
        if (w.scheduled(m, seen + 1)) {
          last[static_cast<std::size_t>(m)] = seen + 1;
        }
      }
    }
  };
  return simulate_impl(
      inst, w.horizon, [&](SourceId m, Slot t) { return w.scheduled(m, t); },
      [&](SourceId m, Slot t) -> std::optional<Slot> {
        refresh(t);
        if (m < 1 || m > w.num_sources) return std::nullopt;
        return last[static_cast<std::size_t>(m)];
      });
}

Slot default_horizon(const Instance& inst, const HomogeneousSchedule& s) {
  return 2 * s.hyperperiod() + inst.max_deadline();
}

int required_channels(const HomogeneousSchedule& s) {
  if (s.empty()) return 0;
  const Slot period = s.hyperperiod();
  std::vector<int> load(static_cast<std::size_t>(period), 0);
  for (const auto& [m, timing] : s.entries()) {
    for (Slot t = timing.offset; t <= period; t += timing.interval) {
      ++load[static_cast<std::size_t>(t - 1)];
    }
  }
  return *std::max_element(load.begin(), load.end());
}

ScheduleWindow assign_channels(const HomogeneousSchedule& s,
                               SourceId num_sources, Slot horizon) {
  if (horizon == 0) horizon = s.hyperperiod();
  ScheduleWindow w = make_window(s, num_sources, horizon);
  const auto k = static_cast<std::size_t>(required_channels(s));
  w.channels.assign(static_cast<std::size_t>(horizon),
                    std::vector<SourceId>(k, 0));
  for (Slot t = 1; t <= horizon; ++t) {
    std::size_t next = 0;
    for (SourceId m = 1; m <= w.num_sources; ++m) {
      if (!w.scheduled(m, t)) continue;
      if (next >= k) throw Error("assign_channels: slot load exceeds K");
      w.channels[static_cast<std::size_t>(t - 1)][next++] = m;
    }
  }
  return w;
}

std::string trace_csv(const AoITrace& trace) {
  std::ostringstream os;
  os << "t";
  for (std::size_t n = 1; n <= trace.ages.size(); ++n) os << ",A_" << n;
  os << "\n";
  for (Slot t = 1; t <= trace.horizon; ++t) {
    os << t;
    for (const auto& row : trace.ages) {
      os << "," << row[static_cast<std::size_t>(t - 1)];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace scpa
