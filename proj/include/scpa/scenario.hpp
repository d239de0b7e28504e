#pragma once

// Grid scenarios: one source located in each cell of a W x H grid, each
// looking in one of four directions and covering a run of 1-3 cells. A region's
// direct set is the source located in it; its combos are all pairs of other
// sources whose footprint includes it.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scpa/core_model.hpp"

namespace scpa {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// the output mix z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31. Child streams are seeded with the
/// mixed value of (parent seed, stream key).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, n) by rejection of the biased low range.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  SplitMix64 split(std::uint64_t key) const;

 private:
  std::uint64_t state_;
};

enum class Orientation { Up, Down, Left, Right };
enum class ToleranceMode { Case1, Case2, Case3 };  // T=d-1, T=1, no fusion
enum class CoverageShape { Straight, LShape };

std::string_view to_string(Orientation o);
std::string_view to_string(ToleranceMode m);
std::string_view to_string(CoverageShape s);

struct GridScenario {
  int width = 3;
  int height = 3;
  int coverage = 2;  // 1, 2 or 3 cells
  Slot d_lo = 2;
  Slot d_hi = 10;
  ToleranceMode mode = ToleranceMode::Case1;
  std::uint64_t seed = 1;
  CoverageShape shape = CoverageShape::Straight;
};

/// Random draws of one scenario, shared by all tolerance modes.
struct Topology {
  int width = 0;
  int height = 0;
  int coverage = 1;
  CoverageShape shape = CoverageShape::Straight;
  std::vector<Orientation> orientation;  // [source - 1]; source m sits in region m
  std::vector<Slot> deadlines;           // [region - 1]
};

/// Orientations for sources 1..W*H in order, then deadlines for regions
/// 1..W*H in order, all from one SplitMix64 stream seeded with `scn.seed`.
Topology draw_topology(const GridScenario& scn);
Topology draw_topology(const GridScenario& scn, SplitMix64& rng);

/// Regions (row-major, 1-based) seen by the source located in `region`.
/// Cells past the border are dropped.
std::vector<RegionId> covered_regions(int width, int height, RegionId region,
                                      Orientation o, int coverage, CoverageShape shape);

Instance build_instance(const Topology& topo, ToleranceMode mode, std::string label = {});

/// Throws Error on bad dimensions, coverage or deadline range.
Instance generate(const GridScenario& scn);

/// 3x3 worked example: sources A..I in regions 1..9, coverage 2, deadlines
/// [6,5,2,2,7,4,3,8,7], T_n = 1.
Instance fixture_3x3_grid();
Topology fixture_3x3_grid_topology();

/// Five-region example described by its activated sets
/// {A,B}, {C,D}, {E}, {F,G,H}, {H,I,J} with deadlines [4,9,9,5,6] and
/// tolerances [1,1,1,2,2]. Multi-source regions carry their set as the only
/// combo and no direct source, so activation reproduces the sets exactly.
Instance fixture_five_regions();

}  // namespace scpa
