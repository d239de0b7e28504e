#include "scpa/grouping.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace scpa {

CollaborationGraph build_graph(const ActivationResult& act) {
  CollaborationGraph g;
  g.vertices = act.active_sources();

  std::set<std::pair<SourceId, SourceId>> edges;
  for (const auto& set : act.active_sets) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        edges.emplace(std::min(set[i], set[j]), std::max(set[i], set[j]));
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());

  // Union-find over vertex positions.
  std::map<SourceId, std::size_t> pos;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) pos[g.vertices[i]] = i;
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : g.edges) {
    const std::size_t ra = root(pos.at(a));
    const std::size_t rb = root(pos.at(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::size_t, std::vector<SourceId>> comps;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    comps[root(i)].push_back(g.vertices[i]);
  }
  for (auto& [r, members] : comps) g.components.push_back(std::move(members));
  std::sort(g.components.begin(), g.components.end());
  return g;
}

double distance(Slot base, std::span<const SourceId> component,
                const std::map<SourceId, Slot>& max_interval) {
  if (base < 1) throw Error("distance: base must be positive");
  double sum = 0.0;
  for (SourceId m : component) {
    const Slot u = max_interval.at(m);
    if (u < base) return kInfiniteDistance;
    const Slot cut = (u / base) * base;
    sum += 1.0 / static_cast<double>(cut) - 1.0 / static_cast<double>(u);
  }
  return sum;
}

std::map<SourceId, Slot> derive_cd_intervals(
    std::span<const SourceId> members, const std::map<SourceId, Slot>& max_interval,
    Slot base) {
  std::vector<SourceId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end(), [&](SourceId a, SourceId b) {
    const Slot ua = max_interval.at(a);
    const Slot ub = max_interval.at(b);
    return ua != ub ? ua < ub : a < b;
  });
  std::map<SourceId, Slot> out;
  Slot chain = base;
  for (SourceId m : sorted) {
    const Slot u = max_interval.at(m);
    if (u < chain) {
      throw Error("derive_cd_intervals: base exceeds the maximum interval of source " +
                  std::to_string(m));
    }
    chain = (u / chain) * chain;
    out[m] = chain;
  }
  return out;
}

bool is_consecutively_divisible(std::vector<Slot> values) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) return false;
    if (i > 0 && values[i] % values[i - 1] != 0) return false;
  }
  return true;
}

std::map<SourceId, Slot> GroupingPlan::intervals() const {
  std::map<SourceId, Slot> out;
  for (const Group& g : groups) out.insert(g.intervals.begin(), g.intervals.end());
  return out;
}

int group_channel_estimate(const std::map<SourceId, Slot>& intervals) {
  if (intervals.empty()) return 0;
  Slot period = 1;
  for (const auto& [m, c] : intervals) period = lcm(period, c);
  Slot slots_used = 0;
  for (const auto& [m, c] : intervals) slots_used += period / c;
  return static_cast<int>((slots_used + period - 1) / period);
}

DcConfig DcConfig::two_bases() {
  DcConfig cfg;
  cfg.max_groups = 2;
  cfg.multi_group_bases = std::vector<std::vector<Slot>>{{2, 3}};
  return cfg;
}

namespace {

void for_each_subset(const std::vector<Slot>& values, std::size_t size,
                     const std::function<void(const std::vector<Slot>&)>& fn) {
  std::vector<Slot> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (current.size() == size) {
      fn(current);
      return;
    }
    for (std::size_t i = start; i + (size - current.size()) <= values.size(); ++i) {
      current.push_back(values[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

std::optional<GroupingPlan> evaluate_bases(const CollaborationGraph& graph,
                                           const std::map<SourceId, Slot>& u,
                                           std::vector<Slot> bases) {
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  if (bases.empty() || bases.front() < 1) return std::nullopt;

  std::vector<std::vector<SourceId>> members(bases.size());
  for (const auto& comp : graph.components) {
    std::size_t best = bases.size();
    double best_dist = kInfiniteDistance;
    for (std::size_t j = 0; j < bases.size(); ++j) {
      const double d = distance(bases[j], comp, u);
      if (d == kInfiniteDistance) continue;
      if (best == bases.size() || d < best_dist - 1e-12) {
        best = j;
        best_dist = d;
      }
    }
    // Some source has no finite distance to any group: abandon this base set.
    if (best == bases.size()) return std::nullopt;
    members[best].insert(members[best].end(), comp.begin(), comp.end());
  }

  GroupingPlan plan;
  plan.bases = bases;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    if (members[j].empty()) continue;
    Group g;
    g.base = bases[j];
    g.members = members[j];
    std::sort(g.members.begin(), g.members.end());
    g.intervals = derive_cd_intervals(g.members, u, g.base);
    plan.objective += group_channel_estimate(g.intervals);
    plan.groups.push_back(std::move(g));
  }
  return plan;
}

}  // namespace

GroupingPlan run_dc(const ActivationResult& act, const CollaborationGraph& graph,
                    const DcConfig& cfg) {
  const auto& u = act.max_interval;
  std::set<Slot> distinct;
  for (const auto& [m, v] : u) distinct.insert(v);
  const std::vector<Slot> values(distinct.begin(), distinct.end());

  std::size_t limit = std::min(graph.count(), values.size());
  if (cfg.max_groups > 0) limit = std::min(limit, cfg.max_groups);
  limit = std::max<std::size_t>(limit, 1);

  std::optional<GroupingPlan> best;
  auto consider = [&](const std::vector<Slot>& bases) {
    auto plan = evaluate_bases(graph, u, bases);
    if (plan && (!best || plan->objective < best->objective)) best = std::move(plan);
  };

  for (std::size_t i = 1; i <= limit; ++i) {
    if (i >= 2 && cfg.multi_group_bases) {
      for (const auto& bases : *cfg.multi_group_bases) {
        if (bases.size() == i) consider(bases);
      }
    } else {
      for_each_subset(values, i, consider);
    }
  }
  if (!best) {
    if (values.empty()) return GroupingPlan{};
    // Unreachable: a single group based at the smallest u is always finite.
    throw Error("run_dc: no feasible base set");
  }
  return *best;
}

Slot min_alignment_tolerance(Slot c_m, Slot c_z) { return c_m - gcd(c_m, c_z); }

bool alignment_feasible(Slot c_m, Slot c_z, Slot tolerance) {
  return tolerance >= min_alignment_tolerance(c_m, c_z);
}

bool alignment_feasible(std::span<const Slot> member_intervals, Slot c_z,
                        Slot tolerance) {
  return std::all_of(member_intervals.begin(), member_intervals.end(),
                     [&](Slot c) { return alignment_feasible(c, c_z, tolerance); });
}

}  // namespace scpa
