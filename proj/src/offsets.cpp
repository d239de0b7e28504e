#include "scpa/offsets.hpp"

#include <algorithm>
#include <limits>

namespace scpa {

SourceId designate_z(std::span<const SourceId> members,
                     const std::map<SourceId, Slot>& intervals) {
  if (members.empty()) throw Error("designate_z: empty member set");
  SourceId z = members.front();
  for (SourceId m : members) {
    const Slot cm = intervals.at(m);
    const Slot cz = intervals.at(z);
    if (cm > cz || (cm == cz && m > z)) z = m;
  }
  return z;
}

OffsetProblem make_offset_problem(std::map<SourceId, Slot> intervals,
                                  std::span<const RegionMembers> regions) {
  OffsetProblem p;
  for (const auto& [m, c] : intervals) {
    if (c < 1) throw Error("make_offset_problem: intervals must be positive");
    p.hyperperiod = lcm(p.hyperperiod, c);
  }
  p.intervals = std::move(intervals);
  for (const RegionMembers& r : regions) {
    if (r.members.size() < 2) continue;
    FusionConstraint fc;
    fc.region = r.region;
    fc.members = r.members;
    std::sort(fc.members.begin(), fc.members.end());
    for (SourceId m : fc.members) {
      if (!p.intervals.contains(m)) {
        throw Error("make_offset_problem: region " + std::to_string(r.region) +
                    " uses source " + std::to_string(m) + " without an interval");
      }
    }
    fc.z = designate_z(fc.members, p.intervals);
    fc.tolerance = r.tolerance;
    const Slot cz = p.intervals.at(fc.z);
    for (SourceId m : fc.members) {
      if (cz % p.intervals.at(m) != 0) {
        throw ConstraintConflict("region " + std::to_string(r.region) + ": interval of " +
                                 source_label(m) + " does not divide the interval of " +
                                 source_label(fc.z));
      }
    }
    p.constraints.push_back(std::move(fc));
  }
  return p;
}

OffsetProblem make_offset_problem(const Instance& inst, const ActivationResult& act,
                                  const std::map<SourceId, Slot>& intervals) {
  std::vector<RegionMembers> regions;
  for (std::size_t i = 0; i < inst.regions.size(); ++i) {
    regions.push_back({inst.regions[i].id, act.active_sets.at(i), inst.regions[i].tolerance});
  }
  return make_offset_problem(intervals, regions);
}

Slot staleness(Slot o_m, Slot c_m, Slot o_z, Slot c_z, Slot i) {
  return positive_mod(i * c_z + o_z - o_m, c_m);
}

bool constraints_satisfied(const std::map<SourceId, Slot>& offsets,
                           const OffsetProblem& problem) {
  for (const auto& [m, c] : problem.intervals) {
    auto it = offsets.find(m);
    if (it == offsets.end() || it->second < 1 || it->second > c) return false;
  }
  for (const FusionConstraint& fc : problem.constraints) {
    const Slot oz = offsets.at(fc.z);
    for (SourceId m : fc.members) {
      if (m == fc.z) continue;
      const Slot om = offsets.at(m);
      if (om > oz) return false;
      if (positive_mod(oz - om, problem.intervals.at(m)) > fc.tolerance) return false;
    }
  }
  return true;
}

int peak_load(const std::map<SourceId, Slot>& offsets, const OffsetProblem& problem) {
  std::vector<int> load(static_cast<std::size_t>(problem.hyperperiod), 0);
  for (const auto& [m, c] : problem.intervals) {
    for (Slot t = offsets.at(m); t <= problem.hyperperiod; t += c) {
      ++load[static_cast<std::size_t>(t - 1)];
    }
  }
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

int load_lower_bound(const OffsetProblem& problem) {
  if (problem.intervals.empty()) return 0;
  Slot used = 0;
  for (const auto& [m, c] : problem.intervals) used += problem.hyperperiod / c;
  return static_cast<int>(
      std::max<Slot>(1, (used + problem.hyperperiod - 1) / problem.hyperperiod));
}

namespace {

struct PairRule {
  std::size_t member;  // search position of m
  std::size_t z;       // search position of z
  Slot interval;       // c_m
  Slot tolerance;
};

class OffsetSearch {
 public:
  OffsetSearch(const OffsetProblem& p, std::uint64_t budget)
      : period_(p.hyperperiod), budget_(budget) {
    for (const auto& [m, c] : p.intervals) order_.push_back(m);
    std::sort(order_.begin(), order_.end(), [&](SourceId a, SourceId b) {
      const Slot ca = p.intervals.at(a);
      const Slot cb = p.intervals.at(b);
      return ca != cb ? ca < cb : a < b;
    });
    std::map<SourceId, std::size_t> pos;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      pos[order_[i]] = i;
      interval_.push_back(p.intervals.at(order_[i]));
    }

    rules_.resize(order_.size());
    std::vector<bool> constrained(order_.size(), false);
    for (const FusionConstraint& fc : p.constraints) {
      for (SourceId m : fc.members) {
        if (m == fc.z) continue;
        PairRule rule{pos.at(m), pos.at(fc.z), p.intervals.at(m), fc.tolerance};
        // Check each rule once, when its later endpoint is placed.
        rules_[std::max(rule.member, rule.z)].push_back(rule);
        constrained[rule.member] = constrained[rule.z] = true;
      }
    }
    // Unconstrained sources sharing an interval are interchangeable; keep
    // their offsets non-decreasing in search order.
    twin_.assign(order_.size(), kNone);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (constrained[i]) continue;
      for (std::size_t j = i; j-- > 0;) {
        if (!constrained[j] && interval_[j] == interval_[i]) {
          twin_[i] = j;
          break;
        }
      }
    }

    load_.assign(static_cast<std::size_t>(period_), 0);
    offset_.assign(order_.size(), 0);
    target_ = load_lower_bound(p);
  }

  void run() {
    if (!order_.empty()) dfs(0, 0);
  }

  bool found() const { return best_peak_ != kNoPeak; }
  bool exhausted() const { return exhausted_; }
  int best_peak() const { return best_peak_; }
  std::uint64_t nodes() const { return nodes_; }

  std::map<SourceId, Slot> best_offsets() const {
    std::map<SourceId, Slot> out;
    for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = best_offset_[i];
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr int kNoPeak = std::numeric_limits<int>::max();

  bool allowed(std::size_t k, Slot o) const {
    if (twin_[k] != kNone && o < offset_[twin_[k]]) return false;
    for (const PairRule& r : rules_[k]) {
      const Slot om = r.member == k ? o : offset_[r.member];
      const Slot oz = r.z == k ? o : offset_[r.z];
      if (om > oz || positive_mod(oz - om, r.interval) > r.tolerance) return false;
    }
    return true;
  }

  int peak_with(std::size_t k, Slot o) const {
    int peak = 0;
    for (Slot t = o; t <= period_; t += interval_[k]) {
      peak = std::max(peak, load_[static_cast<std::size_t>(t - 1)] + 1);
    }
    return peak;
  }

  void place(std::size_t k, Slot o, int delta) {
    for (Slot t = o; t <= period_; t += interval_[k]) {
      load_[static_cast<std::size_t>(t - 1)] += delta;
    }
  }

  void dfs(std::size_t k, int peak) {
    if (done()) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (k == order_.size()) {
      if (peak < best_peak_) {
        best_peak_ = peak;
        best_offset_ = offset_;
      }
      return;
    }
    std::vector<std::pair<int, Slot>> candidates;
    for (Slot o = 1; o <= interval_[k]; ++o) {
      if (allowed(k, o)) candidates.emplace_back(std::max(peak, peak_with(k, o)), o);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [next_peak, o] : candidates) {
      if (next_peak >= best_peak_ || done()) break;
      offset_[k] = o;
      place(k, o, +1);
      dfs(k + 1, next_peak);
      place(k, o, -1);
    }
    offset_[k] = 0;
  }

  bool done() const { return exhausted_ || best_peak_ <= target_; }

  Slot period_;
  std::uint64_t budget_;
  std::vector<SourceId> order_;
  std::vector<Slot> interval_;
  std::vector<std::vector<PairRule>> rules_;
  std::vector<std::size_t> twin_;
  std::vector<int> load_;
  std::vector<Slot> offset_;
  std::vector<Slot> best_offset_;
  int best_peak_ = kNoPeak;
  int target_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

OffsetSolution solve_offsets(const OffsetProblem& problem, const OffsetConfig& cfg) {
  OffsetSearch search(problem, cfg.node_budget);
  search.run();

  OffsetSolution sol;
  sol.nodes = search.nodes();
  sol.certified = !search.exhausted();
  if (search.found()) {
    sol.offsets = search.best_offsets();
  } else if (search.exhausted()) {
    // Equal offsets give zero staleness whenever the divisibility holds.
    for (const auto& [m, c] : problem.intervals) sol.offsets[m] = 1;
  } else if (!problem.intervals.empty()) {
    throw ConstraintConflict("constraints unsatisfiable as written");
  }
  if (!problem.intervals.empty() && !constraints_satisfied(sol.offsets, problem)) {
    throw ConstraintConflict("constraints unsatisfiable as written");
  }
  sol.channels = peak_load(sol.offsets, problem);
  return sol;
}

HomogeneousSchedule make_schedule(const std::map<SourceId, Slot>& intervals,
                                  const std::map<SourceId, Slot>& offsets) {
  HomogeneousSchedule s;
  for (const auto& [m, c] : intervals) s.set(m, c, offsets.at(m));
  return s;
}

}  // namespace scpa
