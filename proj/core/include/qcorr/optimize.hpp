#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qcorr {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  // stop when max |f_i - f_best| over the simplex falls below this
  double initial_step = 0.1;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimization with dimension-adaptive coefficients
/// (Gao & Han), which behaves better than the classic 1 / 2 / 0.5 / 0.5 choice
/// once there are more than a handful of parameters.
MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0, const NelderMeadOptions& options = {});

/// Axis-aligned grid over [lower_i, upper_i) with `points` samples per axis.
/// Calls visit(x) for every grid point in lexicographic order.
void for_each_grid_point(std::span<const double> lower, std::span<const double> upper, int points,
                         const std::function<void(std::span<const double>)>& visit);

struct MultistartOptions {
  int grid_points = 24;
  int restarts = 8;
  NelderMeadOptions refine;
  double agreement = 1e-6;  // best two restarts must agree to this for `converged`
};

struct MultistartResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  std::vector<double> restart_values;  // sorted ascending
};

/// Exhaustive grid, then Nelder-Mead from the `restarts` best grid points.
/// Ties on the grid are broken by lowest grid index, so the result is fully
/// deterministic.
MultistartResult multistart_minimize(const Objective& f, std::span<const double> lower, std::span<const double> upper,
                                     const MultistartOptions& options);

/// Same as multistart_minimize but with explicit starting points instead of a grid.
MultistartResult multistart_minimize(const Objective& f, const std::vector<std::vector<double>>& starts,
                                     const MultistartOptions& options);

}  // namespace qcorr
