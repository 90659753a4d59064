#include "aoi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoi/errors.hpp"

namespace aoi {

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi >= lo) || n < 1) throw ArgumentError("log_grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  grid.back() = hi;
  return grid;
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ScalarMinimum best{lo, std::numeric_limits<double>::infinity(), 0};
  auto probe = [&](double x) {
    const double fx = f(x);
    ++best.evaluations;
    if (fx < best.fx) {
      best.x = x;
      best.fx = fx;
    }
    return fx;
  };

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = probe(c);
  double fd = probe(d);
  for (int i = 0; i < max_iterations; ++i) {
    if (b - a <= rel_tol * 0.5 * (std::abs(a) + std::abs(b))) break;
    // Ties (including both infinite) shrink towards the lower end.
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = probe(d);
    }
  }
  return best;
}

ScalarMinimum grid_golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                                   int grid_points, double rel_tol) {
  const auto grid = log_grid(lo, hi, grid_points);
  ScalarMinimum best{grid.front(), std::numeric_limits<double>::infinity(), 0};
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double fx = f(grid[i]);
    ++best.evaluations;
    if (fx < best.fx) {
      best = {grid[i], fx, best.evaluations};
      best_index = i;
    }
  }
  if (!std::isfinite(best.fx) || grid.size() < 2) return best;

  const double left = grid[best_index == 0 ? 0 : best_index - 1];
  const double right = grid[std::min(best_index + 1, grid.size() - 1)];
  auto refined = golden_section_minimize(f, left, right, rel_tol);
  refined.evaluations += best.evaluations;
  if (refined.fx < best.fx) return refined;
  best.evaluations = refined.evaluations;
  return best;
}

}  // namespace aoi
