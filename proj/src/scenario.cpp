#include "scpa/scenario.hpp"

#include <algorithm>

namespace scpa {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw Error("SplitMix64::below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % n;
  }
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("SplitMix64::between: hi < lo");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

SplitMix64 SplitMix64::split(std::uint64_t key) const {
  SplitMix64 mixer(state_ ^ (key * 0xD1B54A32D192ED03ULL));
  return SplitMix64(mixer.next());
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Up: return "up";
    case Orientation::Down: return "down";
    case Orientation::Left: return "left";
    case Orientation::Right: return "right";
  }
  return "?";
}

std::string_view to_string(ToleranceMode m) {
  switch (m) {
    case ToleranceMode::Case1: return "case1";
    case ToleranceMode::Case2: return "case2";
    case ToleranceMode::Case3: return "case3";
  }
  return "?";
}

std::string_view to_string(CoverageShape s) {
  return s == CoverageShape::Straight ? "straight" : "lshape";
}

namespace {

void check_scenario(const GridScenario& scn) {
  if (scn.width < 1 || scn.height < 1) throw Error("grid dimensions must be positive");
  if (scn.coverage < 1 || scn.coverage > 3) throw Error("coverage must be 1, 2 or 3");
  if (scn.d_lo < 2 || scn.d_hi < scn.d_lo) throw Error("deadline range must satisfy 2 <= dlo <= dhi");
}

std::pair<int, int> step(Orientation o) {
  switch (o) {
    case Orientation::Up: return {-1, 0};
    case Orientation::Down: return {1, 0};
    case Orientation::Left: return {0, -1};
    case Orientation::Right: return {0, 1};
  }
  return {0, 0};
}

Orientation clockwise(Orientation o) {
  switch (o) {
    case Orientation::Up: return Orientation::Right;
    case Orientation::Right: return Orientation::Down;
    case Orientation::Down: return Orientation::Left;
    case Orientation::Left: return Orientation::Up;
  }
  return o;
}

}  // namespace

Topology draw_topology(const GridScenario& scn) {
  SplitMix64 rng(scn.seed);
  return draw_topology(scn, rng);
}

Topology draw_topology(const GridScenario& scn, SplitMix64& rng) {
  check_scenario(scn);
  Topology topo;
  topo.width = scn.width;
  topo.height = scn.height;
  topo.coverage = scn.coverage;
  topo.shape = scn.shape;
  const int cells = scn.width * scn.height;
  for (int m = 0; m < cells; ++m) {
    topo.orientation.push_back(static_cast<Orientation>(rng.below(4)));
  }
  for (int n = 0; n < cells; ++n) topo.deadlines.push_back(rng.between(scn.d_lo, scn.d_hi));
  return topo;
}

std::vector<RegionId> covered_regions(int width, int height, RegionId region,
                                      Orientation o, int coverage, CoverageShape shape) {
  const int row = (region - 1) / width;
  const int col = (region - 1) % width;
  auto inside = [&](int r, int c) { return r >= 0 && r < height && c >= 0 && c < width; };
  auto id = [&](int r, int c) { return static_cast<RegionId>(r * width + c + 1); };

  std::vector<RegionId> out{region};
  const auto [dr, dc] = step(o);
  if (shape == CoverageShape::LShape && coverage == 3) {
    const int fr = row + dr;
    const int fc = col + dc;
    if (!inside(fr, fc)) return out;
    out.push_back(id(fr, fc));
    const auto [sr, sc] = step(clockwise(o));
    if (inside(fr + sr, fc + sc)) out.push_back(id(fr + sr, fc + sc));
    return out;
  }
  for (int i = 1; i < coverage; ++i) {
    const int r = row + i * dr;
    const int c = col + i * dc;
    if (!inside(r, c)) break;
    out.push_back(id(r, c));
  }
  return out;
}

Instance build_instance(const Topology& topo, ToleranceMode mode, std::string label) {
  const int cells = topo.width * topo.height;
  if (static_cast<int>(topo.orientation.size()) != cells ||
      static_cast<int>(topo.deadlines.size()) != cells) {
    throw Error("build_instance: topology size does not match the grid");
  }
  std::vector<std::vector<SourceId>> coverers(static_cast<std::size_t>(cells));
  for (SourceId m = 1; m <= cells; ++m) {
    for (RegionId n : covered_regions(topo.width, topo.height, m,
                                      topo.orientation[static_cast<std::size_t>(m - 1)],
                                      topo.coverage, topo.shape)) {
      if (n != m) coverers[static_cast<std::size_t>(n - 1)].push_back(m);
    }
  }

  Instance inst;
  inst.num_sources = cells;
  inst.label = std::move(label);
  for (RegionId n = 1; n <= cells; ++n) {
    RegionSpec r;
    r.id = n;
    r.deadline = topo.deadlines[static_cast<std::size_t>(n - 1)];
    r.direct = {n};
    r.tolerance = mode == ToleranceMode::Case1 ? r.deadline - 1 : 1;
    if (mode != ToleranceMode::Case3) {
      auto& cov = coverers[static_cast<std::size_t>(n - 1)];
      std::sort(cov.begin(), cov.end());
      for (std::size_t i = 0; i < cov.size(); ++i) {
        for (std::size_t j = i + 1; j < cov.size(); ++j) r.combos.push_back({cov[i], cov[j]});
      }
    }
    inst.regions.push_back(std::move(r));
  }
  return inst;
}

Instance generate(const GridScenario& scn) {
  std::string label = "grid " + std::to_string(scn.width) + "x" + std::to_string(scn.height) +
                      " coverage " + std::to_string(scn.coverage) + " " +
                      std::string(to_string(scn.mode)) + " seed " + std::to_string(scn.seed);
  return build_instance(draw_topology(scn), scn.mode, std::move(label));
}

Topology fixture_3x3_grid_topology() {
  using O = Orientation;
  Topology topo;
  topo.width = 3;
  topo.height = 3;
  topo.coverage = 2;
  topo.orientation = {O::Right, O::Up, O::Up, O::Right, O::Up,
                      O::Down,  O::Right, O::Down, O::Left};
  topo.deadlines = {6, 5, 2, 2, 7, 4, 3, 8, 7};
  return topo;
}

Instance fixture_3x3_grid() {
  return build_instance(fixture_3x3_grid_topology(), ToleranceMode::Case2,
                        "worked example, 3x3 grid");
}

Instance fixture_five_regions() {
  Instance inst;
  inst.label = "five-region grouping example";
  inst.num_sources = 10;  // A..J
  auto region = [](RegionId id, Slot d, Slot tol, std::vector<SourceId> direct,
                   std::vector<std::vector<SourceId>> combos) {
    return RegionSpec{id, d, tol, std::move(direct), std::move(combos)};
  };
  inst.regions = {
      region(1, 4, 1, {}, {{1, 2}}),
      region(2, 9, 1, {}, {{3, 4}}),
      region(3, 9, 1, {5}, {}),
      region(4, 5, 2, {}, {{6, 7, 8}}),
      region(5, 6, 2, {}, {{8, 9, 10}}),
  };
  return inst;
}

}  // namespace scpa
