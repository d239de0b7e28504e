#include "scpa/core_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace scpa {

const RegionSpec& Instance::region(RegionId id) const {
  if (id < 1 || static_cast<std::size_t>(id) > regions.size()) {
    throw Error("region id out of range: " + std::to_string(id));
  }
  return regions[static_cast<std::size_t>(id - 1)];
}

Slot Instance::max_deadline() const {
  Slot best = 0;
  for (const auto& r : regions) best = std::max(best, r.deadline);
  return best;
}

bool ValidationReport::mentions(std::string_view what) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.what == what; });
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    if (v.region != 0) os << "region " << v.region << ": ";
    os << v.what;
    if (!v.sources.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.sources.size(); ++i) {
        os << (i ? "," : "") << v.sources[i];
      }
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

namespace {

bool is_subset(const std::vector<SourceId>& small,
               const std::vector<SourceId>& big) {
  std::vector<SourceId> a = small;
  std::vector<SourceId> b = big;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& opts) {
  ValidationReport rep;
  auto add = [&](std::string what, RegionId region,
                 std::vector<SourceId> sources = {}) {
    rep.violations.push_back({std::move(what), region, std::move(sources)});
  };

  if (inst.num_sources < 1) add("num_sources must be positive", 0);
  if (inst.regions.empty()) add("instance has no regions", 0);

  for (std::size_t i = 0; i < inst.regions.size(); ++i) {
    const RegionSpec& r = inst.regions[i];
    if (r.id != static_cast<RegionId>(i + 1)) {
      add("region ids must be 1..N without gaps", r.id);
    }
    if (r.deadline < 2) add("deadline must be >= 2", r.id);
    if (r.tolerance < 1) add("tolerance must be positive", r.id);
    if (r.tolerance >= r.deadline) add("tolerance must be < deadline", r.id);
    if (r.direct.empty()) {
      if (opts.require_direct_source) add("direct source set is empty", r.id);
      if (r.combos.empty()) add("region has no way to be refreshed", r.id);
    }

    auto check_ids = [&](const std::vector<SourceId>& ids) {
      for (SourceId m : ids) {
        if (m < 1 || m > inst.num_sources) {
          add("source id out of range", r.id, {m});
        }
      }
      std::set<SourceId> uniq(ids.begin(), ids.end());
      if (uniq.size() != ids.size()) add("duplicate source in set", r.id, ids);
    };
    check_ids(r.direct);

    for (std::size_t j = 0; j < r.combos.size(); ++j) {
      const auto& k = r.combos[j];
      check_ids(k);
      if (k.size() < 2) add("combo size >= 2", r.id, k);
      for (SourceId m : k) {
        if (std::find(r.direct.begin(), r.direct.end(), m) != r.direct.end()) {
          add("combo overlaps direct sources", r.id, k);
          break;
        }
      }
      for (std::size_t q = 0; q < r.combos.size(); ++q) {
        if (q != j && is_subset(k, r.combos[q]) &&
            (k.size() < r.combos[q].size() || j < q)) {
          add("combo is a subset of another combo", r.id, k);
          break;
        }
      }
    }
  }
  return rep;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw Error("gcd requires positive arguments");
  return std::gcd(a, b);
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = gcd(a, b);
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw OverflowError("lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") overflows");
  }
  return out;
}

std::int64_t lcm_all(std::span<const std::int64_t> values) {
  std::int64_t acc = 1;
  for (std::int64_t v : values) acc = lcm(acc, v);
  return acc;
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void HomogeneousSchedule::set(SourceId m, Slot interval, Slot offset) {
  if (m < 1) throw Error("source ids are 1-based");
  if (interval < 1 || offset < 1 || offset > interval) {
    throw Error("source " + std::to_string(m) +
                ": need 1 <= offset <= interval, got interval=" +
                std::to_string(interval) + " offset=" + std::to_string(offset));
  }
  entries_[m] = Timing{interval, offset};
}

std::optional<Timing> HomogeneousSchedule::find(SourceId m) const {
  auto it = entries_.find(m);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Slot HomogeneousSchedule::hyperperiod() const {
  Slot acc = 1;
  for (const auto& [m, t] : entries_) acc = lcm(acc, t.interval);
  return acc;
}

bool decision_at(const HomogeneousSchedule& s, SourceId m, Slot t) {
  auto timing = s.find(m);
  if (!timing || t < timing->offset) return false;
  return (t - timing->offset) % timing->interval == 0;
}

bool periodic_decision_at(const Timing& timing, Slot t) {
  return positive_mod(t - timing.offset, timing.interval) == 0;
}

ScheduleWindow ScheduleWindow::empty(SourceId num_sources, Slot horizon) {
  ScheduleWindow w;
  w.horizon = horizon;
  w.num_sources = num_sources;
  w.decisions.assign(static_cast<std::size_t>(horizon),
                     std::vector<std::uint8_t>(
                         static_cast<std::size_t>(num_sources), 0));
  return w;
}

bool ScheduleWindow::scheduled(SourceId m, Slot t) const {
  if (t < 1 || t > horizon || m < 1 || m > num_sources) return false;
  return decisions[static_cast<std::size_t>(t - 1)]
                  [static_cast<std::size_t>(m - 1)] != 0;
}

void ScheduleWindow::schedule(SourceId m, Slot t) {
  if (t < 1 || t > horizon || m < 1 || m > num_sources) {
    throw Error("schedule(): slot or source outside the window");
  }
  decisions[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(m - 1)] =
      1;
}

int ScheduleWindow::load(Slot t) const {
  const auto& row = decisions.at(static_cast<std::size_t>(t - 1));
  return static_cast<int>(std::count(row.begin(), row.end(), 1));
}

int ScheduleWindow::max_load() const {
  int best = 0;
  for (Slot t = 1; t <= horizon; ++t) best = std::max(best, load(t));
  return best;
}

std::size_t ScheduleWindow::num_channels() const {
  return channels.empty() ? 0 : channels.front().size();
}

ScheduleWindow make_window(const HomogeneousSchedule& s, SourceId num_sources,
                           Slot horizon) {
  SourceId width = num_sources;
  if (!s.empty()) width = std::max(width, s.entries().rbegin()->first);
  ScheduleWindow w = ScheduleWindow::empty(width, horizon);
  for (const auto& [m, timing] : s.entries()) {
    for (Slot t = timing.offset; t <= horizon; t += timing.interval) {
      w.schedule(m, t);
    }
  }
  return w;
}

std::string source_label(SourceId m) {
  if (m < 1) return "?";
  std::string out;
  std::int64_t n = m;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return out;
}

std::optional<SourceId> parse_source_label(std::string_view label) {
  if (label.empty() || label.size() > 5) return std::nullopt;
  std::int64_t n = 0;
  for (char ch : label) {
    if (ch < 'A' || ch > 'Z') return std::nullopt;
    n = n * 26 + (ch - 'A' + 1);
  }
  return static_cast<SourceId>(n);
}

}  // namespace scpa
