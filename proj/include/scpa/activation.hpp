#pragma once

// Source activation: every region is served by exactly one of its options
// (a single direct source, or one full combo). An active source must update at
// least as often as the tightest deadline among the regions it serves, so its
// rate is 1 / min d_n. The solver minimizes the total rate.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "scpa/core_model.hpp"

namespace scpa {

struct Option {
  enum class Kind { Direct, Combo };

  Kind kind = Kind::Direct;
  std::size_t index = 0;  // position in RegionSpec::direct or ::combos
  std::vector<SourceId> members;

  bool operator==(const Option&) const = default;
};

/// Direct sources first (in order), then combos (in order).
std::vector<Option> enumerate_options(const RegionSpec& r);

struct ActivationResult {
  SourceId num_sources = 0;
  std::vector<Option> chosen;                       // [n - 1]
  std::vector<std::vector<SourceId>> active_sets;   // M_n, [n - 1], sorted
  std::map<SourceId, std::vector<RegionId>> served;  // N_m for active m
  std::map<SourceId, Slot> max_interval;            // min_{n in N_m} d_n
  double objective = 0.0;                           // sum of l'_m
  bool certified = true;  // false when the node budget forced the greedy path
  std::uint64_t nodes = 0;

  bool q(SourceId m, RegionId n) const;
  double rate(SourceId m) const;
  std::vector<SourceId> active_sources() const;
};

struct ActivationConfig {
  std::uint64_t node_budget = 10'000'000;
};

/// Builds the result implied by one option per region (option indices refer
/// to enumerate_options order).
ActivationResult make_activation(const Instance& inst,
                                 std::span<const std::size_t> option_per_region);

/// Exact depth-first branch-and-bound; falls back to the greedy choice (and
/// clears `certified`) when the node budget runs out.
ActivationResult solve_activation(const Instance& inst,
                                  const ActivationConfig& cfg = {});

/// Cheapest incremental option per region, regions in ascending deadline.
ActivationResult greedy_activation(const Instance& inst);

/// Sum over active sources of 1 / max_interval, accumulated in source order.
double activation_objective(const std::map<SourceId, Slot>& max_interval);

}  // namespace scpa
