#pragma once

// Channel lower bound from a fractional covering LP over per-source update
// rates:  min sum_m l_m  s.t.  sum_m a_{n,m} l_m >= 1/d_n,  0 <= l_m <= 1,
// where a_{n,m} counts how often m appears in region n (once if direct, once
// per combo containing it). The bound is ceil(sum_m l*_m).

#include <vector>

#include "scpa/core_model.hpp"

namespace scpa {

struct CoverConstraints {
  SourceId num_sources = 0;
  std::vector<RegionId> regions;          // row n -> region id
  std::vector<std::vector<int>> coeff;    // [row][m - 1]
  std::vector<Slot> deadlines;            // row n -> d_n, rhs = 1/d_n

  double rhs(std::size_t row) const { return 1.0 / static_cast<double>(deadlines[row]); }
};

CoverConstraints build_lb_constraints(const Instance& inst);

struct LowerBound {
  std::vector<double> rates;  // [m - 1] -> l*_m
  double total = 0.0;
  int channels = 0;
  int pivots = 0;
};

inline constexpr double kLpTolerance = 1e-9;
inline constexpr double kCeilGuard = 1e-9;

/// ceil(x - 1e-9), at least 0.
int guarded_ceil(double x);

/// Throws Error if the simplex fails to converge.
LowerBound solve_lb(const Instance& inst);
LowerBound solve_lb(const CoverConstraints& cons);

}  // namespace scpa
