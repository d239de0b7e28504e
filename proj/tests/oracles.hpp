#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond the plain data types, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "scpa/core_model.hpp"

namespace oracle {

using scpa::Instance;
using scpa::Slot;
using scpa::SourceId;

inline Slot mod(Slot a, Slot m) { return ((a % m) + m) % m; }

/// Is there an offset pair whose staleness never exceeds T?
inline bool alignment_feasible(Slot cm, Slot cz, Slot tolerance) {
  const Slot period = std::lcm(cm, cz);
  for (Slot om = 1; om <= cm; ++om) {
    for (Slot oz = 1; oz <= cz; ++oz) {
      Slot worst = 0;
      for (Slot i = 0; i < period / cz; ++i) worst = std::max(worst, mod(i * cz + oz - om, cm));
      if (worst <= tolerance) return true;
    }
  }
  return false;
}

/// Age of m's latest update at the (i+1)-th transmission of z, by walking back
/// over time slots (transmission pattern extended to the past).
inline Slot staleness_by_walk(Slot om, Slot cm, Slot oz, Slot cz, Slot i) {
  const Slot tau = oz + i * cz;
  Slot t = tau;
  while (mod(t - om, cm) != 0) --t;
  return tau - t;
}

/// Direct transcription of the age recursion over an explicit decision
/// matrix sent[t - 1][m - 1].
inline std::vector<std::vector<Slot>> ages(const Instance& inst,
                                           const std::vector<std::vector<bool>>& sent) {
  const Slot horizon = static_cast<Slot>(sent.size());
  std::vector<std::vector<Slot>> out(inst.regions.size(), std::vector<Slot>(horizon, 0));
  auto latest = [&](SourceId m, Slot t) -> std::optional<Slot> {
    for (Slot u = t; u >= 1; --u) {
      if (sent[u - 1][m - 1]) return u;
    }
    return std::nullopt;
  };
  for (std::size_t n = 0; n < inst.regions.size(); ++n) {
    const auto& r = inst.regions[n];
    out[n][0] = 1;
    for (Slot t = 1; t < horizon; ++t) {
      bool reset = false;
      for (SourceId m : r.direct) reset = reset || sent[t - 1][m - 1];
      for (const auto& combo : r.combos) {
        bool any = false;
        bool all = true;
        Slot oldest = std::numeric_limits<Slot>::max();
        for (SourceId m : combo) {
          any = any || sent[t - 1][m - 1];
          auto g = latest(m, t);
          if (!g) {
            all = false;
          } else {
            oldest = std::min(oldest, *g);
          }
        }
        if (any && all && t - oldest <= r.tolerance) reset = true;
      }
      out[n][t] = reset ? 1 : out[n][t - 1] + 1;
    }
  }
  return out;
}

inline std::vector<std::vector<bool>> decisions(
    const std::map<SourceId, std::pair<Slot, Slot>>& timing, SourceId num_sources, Slot horizon) {
  std::vector<std::vector<bool>> sent(horizon, std::vector<bool>(num_sources, false));
  for (const auto& [m, co] : timing) {
    for (Slot t = co.second; t <= horizon; t += co.first) sent[t - 1][m - 1] = true;
  }
  return sent;
}

/// Minimum over all option tuples of sum_m 1/min d, as an exact fraction
/// numerator over `scale` (a common multiple of all deadlines).
inline std::int64_t activation_optimum(const Instance& inst, std::int64_t scale) {
  std::vector<std::vector<std::vector<SourceId>>> options;
  for (const auto& r : inst.regions) {
    std::vector<std::vector<SourceId>> opts;
    for (SourceId m : r.direct) opts.push_back({m});
    for (const auto& c : r.combos) opts.push_back(c);
    options.push_back(opts);
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    std::map<SourceId, Slot> tightest;
    for (std::size_t n = 0; n < options.size(); ++n) {
      for (SourceId m : options[n][pick[n]]) {
        auto [it, fresh] = tightest.emplace(m, inst.regions[n].deadline);
        if (!fresh) it->second = std::min(it->second, inst.regions[n].deadline);
      }
    }
    std::int64_t cost = 0;
    for (const auto& [m, d] : tightest) cost += scale / d;
    best = std::min(best, cost);
    std::size_t n = 0;
    while (n < pick.size() && ++pick[n] == options[n].size()) pick[n++] = 0;
    if (n == pick.size()) break;
  }
  return best;
}

struct OffsetRule {
  std::vector<SourceId> members;
  Slot tolerance;
};

/// Minimum peak load over every offset tuple satisfying the fusion rules;
/// z is any member with the largest interval. nullopt if none is feasible.
inline std::optional<int> offsets_optimum(const std::map<SourceId, Slot>& intervals,
                                          const std::vector<OffsetRule>& rules) {
  std::vector<SourceId> ids;
  Slot period = 1;
  for (const auto& [m, c] : intervals) {
    ids.push_back(m);
    period = std::lcm(period, c);
  }
  std::map<SourceId, Slot> o;
  for (SourceId m : ids) o[m] = 1;
  std::optional<int> best;
  while (true) {
    bool ok = true;
    for (const auto& rule : rules) {
      SourceId z = rule.members.front();
      for (SourceId m : rule.members) {
        if (intervals.at(m) > intervals.at(z) || (intervals.at(m) == intervals.at(z) && m > z)) z = m;
      }
      for (SourceId m : rule.members) {
        if (m == z) continue;
        // Every transmission of z must find m's update fresh enough.
        for (Slot i = 0; i < period / intervals.at(z); ++i) {
          if (o[m] > o[z] || staleness_by_walk(o[m], intervals.at(m), o[z], intervals.at(z), i) >
                                 rule.tolerance) {
            ok = false;
          }
        }
      }
    }
    if (ok) {
      int peak = 0;
      for (Slot t = 1; t <= period; ++t) {
        int load = 0;
        for (SourceId m : ids) load += (t >= o[m] && (t - o[m]) % intervals.at(m) == 0) ? 1 : 0;
        peak = std::max(peak, load);
      }
      if (!best || peak < *best) best = peak;
    }
    std::size_t k = 0;
    while (k < ids.size() && ++o[ids[k]] > intervals.at(ids[k])) o[ids[k++]] = 1;
    if (k == ids.size()) break;
  }
  return best;
}

/// Optimum of min sum l s.t. A l >= b, l >= 0 by enumerating basic solutions
/// (the box l <= 1 never binds at the optimum because each row has b <= 1 and
/// integer coefficients >= 1).
inline double cover_lp_optimum(const std::vector<std::vector<int>>& a, const std::vector<double>& b) {
  const std::size_t rows = a.size();
  const std::size_t vars = rows ? a.front().size() : 0;
  // Constraint pool: rows (A l = b when tight) and l_j = 0.
  const std::size_t pool = rows + vars;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(vars);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == vars) {
      std::vector<std::vector<double>> m(vars, std::vector<double>(vars + 1, 0.0));
      for (std::size_t i = 0; i < vars; ++i) {
        if (pick[i] < rows) {
          for (std::size_t j = 0; j < vars; ++j) m[i][j] = a[pick[i]][j];
          m[i][vars] = b[pick[i]];
        } else {
          m[i][pick[i] - rows] = 1.0;
        }
      }
      for (std::size_t c = 0; c < vars; ++c) {
        std::size_t p = c;
        for (std::size_t r = c; r < vars; ++r) {
          if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        }
        if (std::abs(m[p][c]) < 1e-12) return;
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < vars; ++r) {
          if (r == c) continue;
          const double f = m[r][c] / m[c][c];
          for (std::size_t k = c; k <= vars; ++k) m[r][k] -= f * m[c][k];
        }
      }
      std::vector<double> l(vars);
      double total = 0.0;
      for (std::size_t j = 0; j < vars; ++j) {
        l[j] = m[j][vars] / m[j][j];
        if (l[j] < -1e-9) return;
        total += l[j];
      }
      for (std::size_t r = 0; r < rows; ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < vars; ++j) lhs += a[r][j] * l[j];
        if (lhs < b[r] - 1e-9) return;
      }
      best = std::min(best, total);
      return;
    }
    for (std::size_t i = start; i + (vars - depth) <= pool; ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  if (vars == 0) return 0.0;
  choose(0, 0);
  return best;
}

}  // namespace oracle
