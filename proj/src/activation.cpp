#include "scpa/activation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace scpa {

std::vector<Option> enumerate_options(const RegionSpec& r) {
  std::vector<Option> out;
  for (std::size_t i = 0; i < r.direct.size(); ++i) {
    out.push_back({Option::Kind::Direct, i, {r.direct[i]}});
  }
  for (std::size_t j = 0; j < r.combos.size(); ++j) {
    std::vector<SourceId> members = r.combos[j];
    std::sort(members.begin(), members.end());
    out.push_back({Option::Kind::Combo, j, std::move(members)});
  }
  return out;
}

bool ActivationResult::q(SourceId m, RegionId n) const {
  const auto& set = active_sets.at(static_cast<std::size_t>(n - 1));
  return std::binary_search(set.begin(), set.end(), m);
}

double ActivationResult::rate(SourceId m) const {
  auto it = max_interval.find(m);
  return it == max_interval.end() ? 0.0 : 1.0 / static_cast<double>(it->second);
}

std::vector<SourceId> ActivationResult::active_sources() const {
  std::vector<SourceId> out;
  for (const auto& [m, u] : max_interval) out.push_back(m);
  return out;
}

double activation_objective(const std::map<SourceId, Slot>& max_interval) {
  double sum = 0.0;
  for (const auto& [m, u] : max_interval) sum += 1.0 / static_cast<double>(u);
  return sum;
}

ActivationResult make_activation(const Instance& inst,
                                 std::span<const std::size_t> option_per_region) {
  if (option_per_region.size() != inst.regions.size()) {
    throw Error("make_activation: need one option per region");
  }
  ActivationResult res;
  res.num_sources = inst.num_sources;
  for (std::size_t i = 0; i < inst.regions.size(); ++i) {
    const RegionSpec& r = inst.regions[i];
    auto options = enumerate_options(r);
    if (option_per_region[i] >= options.size()) {
      throw Error("make_activation: option index out of range for region " +
                  std::to_string(r.id));
    }
    Option opt = options[option_per_region[i]];
    res.active_sets.push_back(opt.members);
    for (SourceId m : opt.members) {
      res.served[m].push_back(r.id);
      auto [it, inserted] = res.max_interval.emplace(m, r.deadline);
      if (!inserted) it->second = std::min(it->second, r.deadline);
    }
    res.chosen.push_back(std::move(opt));
  }
  res.objective = activation_objective(res.max_interval);
  return res;
}

namespace {

constexpr double kEps = 1e-12;

std::vector<std::size_t> deadline_order(const Instance& inst) {
  std::vector<std::size_t> order(inst.regions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.regions[a].deadline < inst.regions[b].deadline;
  });
  return order;
}

class ActivationSearch {
 public:
  ActivationSearch(const Instance& inst, std::uint64_t budget)
      : inst_(inst), budget_(budget), order_(deadline_order(inst)) {
    const auto m = static_cast<std::size_t>(inst.num_sources) + 1;
    for (std::size_t pos : order_) {
      options_.push_back(enumerate_options(inst.regions[pos]));
      inv_deadline_.push_back(1.0 / static_cast<double>(inst.regions[pos].deadline));
    }
    // users_[k][s]: regions at depth >= k with some option containing s.
    users_.assign(order_.size() + 1, std::vector<int>(m, 0));
    for (std::size_t k = order_.size(); k-- > 0;) {
      users_[k] = users_[k + 1];
      std::vector<bool> seen(m, false);
      for (const auto& opt : options_[k]) {
        for (SourceId s : opt.members) seen[static_cast<std::size_t>(s)] = true;
      }
      for (std::size_t s = 0; s < m; ++s) users_[k][s] += seen[s] ? 1 : 0;
    }
    active_.assign(m, false);
    path_.assign(order_.size(), 0);
  }

  // Returns false when the budget ran out.
  bool run() {
    dfs(0, 0.0);
    return !exhausted_;
  }

  double best_cost() const { return best_cost_; }
  std::uint64_t nodes() const { return nodes_; }

  std::vector<std::size_t> best_choice() const {
    std::vector<std::size_t> choice(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) choice[order_[k]] = best_path_[k];
    return choice;
  }

 private:
  int inactive_count(const Option& opt) const {
    int c = 0;
    for (SourceId s : opt.members) c += active_[static_cast<std::size_t>(s)] ? 0 : 1;
    return c;
  }

  // Admissible estimate of the cost still to be paid by regions at depth >= k.
  // Two valid bounds: the single most expensive region on its own, and a split
  // of every not-yet-active source's rate among the regions able to use it.
  double remaining_bound(std::size_t k) const {
    double worst = 0.0;
    double shared = 0.0;
    for (std::size_t r = k; r < order_.size(); ++r) {
      double cheapest = std::numeric_limits<double>::infinity();
      double cheapest_share = std::numeric_limits<double>::infinity();
      for (const auto& opt : options_[r]) {
        cheapest = std::min(cheapest, inactive_count(opt) * inv_deadline_[r]);
        double share = 0.0;
        for (SourceId s : opt.members) {
          if (active_[static_cast<std::size_t>(s)]) continue;
          share += inv_deadline_[r] / users_[k][static_cast<std::size_t>(s)];
        }
        cheapest_share = std::min(cheapest_share, share);
      }
      worst = std::max(worst, cheapest);
      shared += cheapest_share;
    }
    return std::max(worst, shared);
  }

  void dfs(std::size_t k, double cost) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (k == order_.size()) {
      if (cost < best_cost_ - kEps) {
        best_cost_ = cost;
        best_path_ = path_;
      }
      return;
    }
    for (std::size_t i = 0; i < options_[k].size(); ++i) {
      const Option& opt = options_[k][i];
      std::vector<SourceId> added;
      for (SourceId s : opt.members) {
        if (!active_[static_cast<std::size_t>(s)]) {
          active_[static_cast<std::size_t>(s)] = true;
          added.push_back(s);
        }
      }
      const double next = cost + static_cast<double>(added.size()) * inv_deadline_[k];
      if (next + remaining_bound(k + 1) < best_cost_ - kEps) {
        path_[k] = i;
        dfs(k + 1, next);
      }
      for (SourceId s : added) active_[static_cast<std::size_t>(s)] = false;
      if (exhausted_) return;
    }
  }

  const Instance& inst_;
  std::uint64_t budget_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Option>> options_;
  std::vector<double> inv_deadline_;
  std::vector<std::vector<int>> users_;
  std::vector<bool> active_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> best_path_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ActivationResult greedy_activation(const Instance& inst) {
  std::vector<bool> active(static_cast<std::size_t>(inst.num_sources) + 1, false);
  std::vector<std::size_t> choice(inst.regions.size(), 0);
  for (std::size_t pos : deadline_order(inst)) {
    auto options = enumerate_options(inst.regions[pos]);
    std::size_t best = 0;
    int best_new = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < options.size(); ++i) {
      int fresh = 0;
      for (SourceId s : options[i].members) fresh += active[static_cast<std::size_t>(s)] ? 0 : 1;
      if (fresh < best_new) {
        best_new = fresh;
        best = i;
      }
    }
    for (SourceId s : options[best].members) active[static_cast<std::size_t>(s)] = true;
    choice[pos] = best;
  }
  ActivationResult res = make_activation(inst, choice);
  res.certified = false;
  return res;
}

ActivationResult solve_activation(const Instance& inst, const ActivationConfig& cfg) {
  for (const RegionSpec& r : inst.regions) {
    if (r.direct.empty() && r.combos.empty()) {
      throw Error("solve_activation: region " + std::to_string(r.id) +
                  " has no options");
    }
  }
  ActivationSearch search(inst, cfg.node_budget);
  ActivationResult res;
  if (search.run()) {
    res = make_activation(inst, search.best_choice());
  } else {
    res = greedy_activation(inst);
  }
  res.nodes = search.nodes();
  return res;
}

}  // namespace scpa
