#pragma once

#include <functional>
#include <vector>

namespace aoi {

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

/// n points spaced evenly in log scale over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int n);

/// Golden-section search on [lo, hi] until the bracket is narrower than
/// rel_tol times its midpoint. f may return +inf for infeasible points.
/// The result is the best point probed, not merely the final bracket centre.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol, int max_iterations = 500);

/// Logarithmic grid scan followed by golden-section refinement inside the
/// bracket around the best grid point. Returns fx = +inf if every probe was
/// infeasible.
ScalarMinimum grid_golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                                   int grid_points, double rel_tol);

}  // namespace aoi
