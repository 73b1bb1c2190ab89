#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <queue>

#include "qcorr/errors.hpp"

namespace qcorr {

MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw DimensionError("nelder_mead: empty parameter vector");
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;  // expansion
  const double gamma = 0.75 - 1.0 / (2.0 * dn);  // contraction
  const double delta = 1.0 - 1.0 / dn;  // shrink

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double spread = 0.0;
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      spread = std::max(spread, std::abs(values[i] - values[best]));
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (spread < options.tolerance && size < 1e-7) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / dn;
    }

    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
    const double f_reflect = f(trial);

    if (f_reflect < values[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point, inside otherwise.
    const bool outside = f_reflect < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      trial2[k] = outside ? centroid[k] + gamma * (trial[k] - centroid[k])
                          : centroid[k] - gamma * (centroid[k] - simplex[worst][k]);
    }
    const double f_contract = f(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
      values[i] = f(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best], values[best], iteration};
}

void for_each_grid_point(std::span<const double> lower, std::span<const double> upper, int points,
                         const std::function<void(std::span<const double>)>& visit) {
  const std::size_t n = lower.size();
  if (upper.size() != n) throw DimensionError("for_each_grid_point: bound lengths differ");
  if (points < 1) throw ValidationError("for_each_grid_point: need at least one point per axis");
  std::vector<int> index(n, 0);
  std::vector<double> x(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = lower[k] + (upper[k] - lower[k]) * static_cast<double>(index[k]) / static_cast<double>(points);
    }
    visit(x);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++index[k] < points) break;
      index[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

namespace {

MultistartResult refine_from(const Objective& f, const std::vector<std::vector<double>>& starts,
                             const MultistartOptions& options) {
  MultistartResult out;
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    const auto local = nelder_mead(f, start, options.refine);
    out.restart_values.push_back(local.value);
    if (local.value < out.value) {
      out.value = local.value;
      out.x = local.x;
    }
  }
  std::sort(out.restart_values.begin(), out.restart_values.end());
  out.converged = out.restart_values.size() < 2 || out.restart_values[1] - out.restart_values[0] <= options.agreement;
  return out;
}

}  // namespace

MultistartResult multistart_minimize(const Objective& f, std::span<const double> lower, std::span<const double> upper,
                                     const MultistartOptions& options) {
  const auto keep = static_cast<std::size_t>(std::max(1, options.restarts));
  struct Candidate {
    double value;
    std::size_t index;
    std::vector<double> x;
    bool operator<(const Candidate& o) const { return value < o.value || (value == o.value && index < o.index); }
  };
  // Max-heap keeps the `keep` smallest; the grid index makes ties deterministic.
  std::priority_queue<Candidate> best;
  std::size_t index = 0;
  for_each_grid_point(lower, upper, options.grid_points, [&](std::span<const double> x) {
    Candidate c{f(x), index++, {}};
    if (best.size() < keep || c < best.top()) {
      c.x.assign(x.begin(), x.end());
      if (best.size() == keep) best.pop();
      best.push(std::move(c));
    }
  });
  std::vector<Candidate> chosen;
  while (!best.empty()) {
    chosen.push_back(best.top());
    best.pop();
  }
  std::reverse(chosen.begin(), chosen.end());
  std::vector<std::vector<double>> starts;
  starts.reserve(chosen.size());
  for (auto& c : chosen) starts.push_back(std::move(c.x));
  return refine_from(f, starts, options);
}

MultistartResult multistart_minimize(const Objective& f, const std::vector<std::vector<double>>& starts,
                                     const MultistartOptions& options) {
  if (starts.empty()) throw ValidationError("multistart_minimize: no starting points");
  return refine_from(f, starts, options);
}

}  // namespace qcorr
