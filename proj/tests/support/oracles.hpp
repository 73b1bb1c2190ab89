#pragma once
// Independent reference implementations used only by tests. They share no
// code path with the production optimizers: the measurement kets are written
// out by hand, the post-measurement state is built with full tensor products,
// and the search is an exhaustive grid.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qcorr/correlation.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

namespace qcorr::testing {

inline ComplexMatrix qubit_basis_by_hand(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  return ComplexMatrix{{c, -std::conj(e) * s}, {e * s, c}};
}

enum class Measure { Deficit, Discord };

inline double measure_for_angles(const DensityMatrix& rho, Measure which, double theta, double phi) {
  const BipartiteDims dims{2, 2};
  const auto basis = MeasurementBasis::from_unitary(qubit_basis_by_hand(theta, phi));
  const DensityMatrix measured = post_measurement_state(rho, dims, basis);
  if (which == Measure::Deficit) return von_neumann_entropy(measured) - von_neumann_entropy(rho);
  return conditional_entropy(measured, dims) - conditional_entropy(rho, dims);
}

struct GridMinimum {
  double value;
  double theta;
  double phi;
};

/// Exhaustive grid over theta in [0, pi], phi in [0, 2 pi) followed by
/// `zoom_levels` nested local grids around the incumbent.
inline GridMinimum grid_oracle(const DensityMatrix& rho, Measure which, int points, int zoom_levels = 0) {
  constexpr double pi = std::numbers::pi;
  GridMinimum best{1e300, 0.0, 0.0};
  for (int i = 0; i <= points; ++i) {
    const double theta = pi * i / points;
    for (int j = 0; j < points; ++j) {
      const double phi = 2.0 * pi * j / points;
      const double v = measure_for_angles(rho, which, theta, phi);
      if (v < best.value) best = {v, theta, phi};
    }
  }
  double half_t = pi / points;
  double half_p = 2.0 * pi / points;
  constexpr int local = 20;
  for (int level = 0; level < zoom_levels; ++level) {
    const GridMinimum centre = best;
    for (int i = 0; i <= local; ++i) {
      const double theta = std::clamp(centre.theta - half_t + 2.0 * half_t * i / local, 0.0, pi);
      for (int j = 0; j <= local; ++j) {
        const double phi = centre.phi - half_p + 2.0 * half_p * j / local;
        const double v = measure_for_angles(rho, which, theta, phi);
        if (v < best.value) best = {v, theta, phi};
      }
    }
    half_t /= 5.0;
    half_p /= 5.0;
  }
  return best;
}

/// Two-qubit maximal singlet fraction: every maximally entangled vector is a
/// real combination of the magic basis up to a global phase, so F is the top
/// eigenvalue of Re(M^dagger rho M).
inline double magic_basis_msf(const DensityMatrix& rho) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  // Columns: (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
  const ComplexMatrix m{{r, i * r, 0.0, 0.0}, {0.0, 0.0, i * r, r}, {0.0, 0.0, i * r, -r}, {r, -i * r, 0.0, 0.0}};
  const ComplexMatrix rotated = dagger(m) * rho.matrix() * m;
  ComplexMatrix re(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) re(a, b) = rotated(a, b).real();
  return hermitian_eigenvalues(re).back();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + dagger(g));
}

}  // namespace qcorr::testing
