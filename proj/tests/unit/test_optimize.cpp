#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

using namespace qcorr;

namespace {

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

}  // namespace

TEST_CASE("nelder_mead finds a quadratic minimum") {
  const Objective f = [](std::span<const double> x) {
    return std::pow(x[0] - 1.0, 2) + 2.0 * std::pow(x[1] + 0.5, 2) + 0.5 * std::pow(x[2], 2);
  };
  const double x0[] = {0.0, 0.0, 0.0};
  const MinimizeResult r = nelder_mead(f, x0, {2000, 1e-14, 0.5});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(std::abs(r.x[2]) < 1e-5);
  CHECK(r.value < 1e-10);
}

TEST_CASE("nelder_mead on Rosenbrock") {
  const double x0[] = {-1.2, 1.0};
  const MinimizeResult r = nelder_mead(rosenbrock, x0, {5000, 1e-16, 0.5});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("nelder_mead rejects an empty start") {
  const Objective f = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(nelder_mead(f, std::span<const double>{}), DimensionError);
}

TEST_CASE("grid visits points in lexicographic order over a half-open box") {
  const double lower[] = {0.0, 10.0};
  const double upper[] = {1.0, 12.0};
  std::vector<std::pair<double, double>> seen;
  for_each_grid_point(lower, upper, 2, [&](std::span<const double> x) { seen.emplace_back(x[0], x[1]); });
  REQUIRE(seen.size() == 4);
  CHECK(seen[0] == std::pair{0.0, 10.0});
  CHECK(seen[1] == std::pair{0.0, 11.0});
  CHECK(seen[2] == std::pair{0.5, 10.0});
  CHECK(seen[3] == std::pair{0.5, 11.0});
  CHECK_THROWS_AS(for_each_grid_point(lower, upper, 0, [](std::span<const double>) {}), ValidationError);
}

TEST_CASE("multistart escapes local minima") {
  // Many local minima; global minimum at x = 0 on [-5, 5).
  const Objective rastrigin = [](std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
  };
  const double lower[] = {-5.0, -5.0};
  const double upper[] = {5.0, 5.0};
  MultistartOptions opts;
  opts.grid_points = 20;
  opts.refine.initial_step = 0.25;
  const MultistartResult r = multistart_minimize(rastrigin, lower, upper, opts);
  CHECK(r.value < 1e-8);
  CHECK(std::abs(r.x[0]) < 1e-4);
  CHECK(r.restart_values.size() == 8);
  CHECK(std::is_sorted(r.restart_values.begin(), r.restart_values.end()));
}

TEST_CASE("multistart convergence flag") {
  // Two separated wells of different depth: only one restart region reaches the global value.
  const Objective f = [](std::span<const double> x) {
    return std::min(std::pow(x[0] - 1.0, 2), std::pow(x[0] + 1.0, 2) + 0.5);
  };
  MultistartOptions opts;
  opts.restarts = 2;
  const std::vector<std::vector<double>> starts{{1.2}, {-1.2}};
  const MultistartResult split = multistart_minimize(f, starts, opts);
  CHECK(split.value < 1e-10);
  CHECK_FALSE(split.converged);

  const std::vector<std::vector<double>> same{{1.2}, {0.8}};
  CHECK(multistart_minimize(f, same, opts).converged);
}

TEST_CASE("multistart is deterministic") {
  const Objective f = [](std::span<const double> x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  const double lower[] = {0.0, 0.0};
  const double upper[] = {3.0, 3.0};
  const MultistartOptions opts;
  const MultistartResult a = multistart_minimize(f, lower, upper, opts);
  const MultistartResult b = multistart_minimize(f, lower, upper, opts);
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
}
