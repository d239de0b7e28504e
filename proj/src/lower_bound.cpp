#include "scpa/lower_bound.hpp"

#include <algorithm>
#include <cmath>

namespace scpa {

CoverConstraints build_lb_constraints(const Instance& inst) {
  CoverConstraints c;
  c.num_sources = inst.num_sources;
  for (const RegionSpec& r : inst.regions) {
    std::vector<int> row(static_cast<std::size_t>(inst.num_sources), 0);
    for (SourceId m : r.direct) ++row.at(static_cast<std::size_t>(m - 1));
    for (const auto& combo : r.combos) {
      for (SourceId m : combo) ++row.at(static_cast<std::size_t>(m - 1));
    }
    c.regions.push_back(r.id);
    c.coeff.push_back(std::move(row));
    c.deadlines.push_back(r.deadline);
  }
  return c;
}

int guarded_ceil(double x) {
  return std::max(0, static_cast<int>(std::ceil(x - kCeilGuard)));
}

LowerBound solve_lb(const Instance& inst) {
  return solve_lb(build_lb_constraints(inst));
}

// The covering LP is solved through its dual,
//   max sum_n y_n / d_n - sum_m w_m
//   s.t. sum_n a_{n,m} y_n - w_m <= 1,  y, w >= 0,
// whose slack basis is feasible from the start. The primal rates are the
// shadow prices of the dual rows. Bland's rule rules out cycling.
LowerBound solve_lb(const CoverConstraints& cons) {
  const std::size_t rows = static_cast<std::size_t>(cons.num_sources);
  const std::size_t ny = cons.coeff.size();
  const std::size_t nw = rows;
  const std::size_t cols = ny + nw + rows;  // y | w | slack
  const std::size_t rhs = cols;

  std::vector<std::vector<double>> tab(rows, std::vector<double>(cols + 1, 0.0));
  std::vector<double> reduced(cols, 0.0);
  std::vector<std::size_t> basis(rows);

  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < ny; ++n) {
      tab[m][n] = static_cast<double>(cons.coeff[n][m]);
    }
    tab[m][ny + m] = -1.0;
    tab[m][ny + nw + m] = 1.0;
    tab[m][rhs] = 1.0;
    basis[m] = ny + nw + m;
  }
  for (std::size_t n = 0; n < ny; ++n) reduced[n] = cons.rhs(n);
  for (std::size_t m = 0; m < nw; ++m) reduced[ny + m] = -1.0;

  LowerBound out;
  const int max_pivots = 50 * static_cast<int>(cols + rows) + 1000;
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced[j] > kLpTolerance) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter] <= kLpTolerance) continue;
      const double ratio = tab[i][rhs] / tab[i][enter];
      if (leave == rows || ratio < best_ratio - kLpTolerance ||
          (ratio <= best_ratio + kLpTolerance && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Unbounded dual would mean an infeasible covering problem, which cannot
    // happen with every l_m allowed up to 1 and every 1/d_n <= 1.
    if (leave == rows) throw Error("solve_lb: dual unbounded");
    if (++out.pivots > max_pivots) throw Error("solve_lb: simplex did not converge");

    const double piv = tab[leave][enter];
    for (double& v : tab[leave]) v /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || tab[i][enter] == 0.0) continue;
      const double f = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    const double f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }

  out.rates.assign(rows, 0.0);
  for (std::size_t m = 0; m < rows; ++m) {
    out.rates[m] = std::clamp(-reduced[ny + nw + m], 0.0, 1.0);
  }
  for (std::size_t n = 0; n < ny; ++n) {
    double lhs = 0.0;
    for (std::size_t m = 0; m < rows; ++m) {
      lhs += cons.coeff[n][m] * out.rates[m];
    }
    if (lhs < cons.rhs(n) - kLpTolerance) {
      throw Error("solve_lb: recovered rates violate region " +
                  std::to_string(cons.regions[n]));
    }
  }
  for (double l : out.rates) out.total += l;
  out.channels = guarded_ceil(out.total);
  return out;
}

}  // namespace scpa
