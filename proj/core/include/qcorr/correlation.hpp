#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

/// Rank-one von Neumann measurement {|b_i><b_i|} on subsystem B. The kets are
/// the columns of unitary_from_angles(dim_b, parameters).
class MeasurementBasis {
 public:
  MeasurementBasis() = default;
  /// Throws DimensionError on a wrong parameter count.
  static MeasurementBasis from_parameters(std::size_t dim_b, std::span<const double> parameters);
  /// Columns of `u` as the basis kets; throws ValidationError if u is not unitary.
  static MeasurementBasis from_unitary(const ComplexMatrix& u);

  std::size_t dim() const noexcept { return unitary_.rows(); }
  const std::vector<double>& parameters() const noexcept { return parameters_; }
  const ComplexMatrix& unitary() const noexcept { return unitary_; }
  ComplexVector ket(std::size_t i) const { return column(unitary_, i); }
  std::vector<ComplexMatrix> projectors() const;

 private:
  MeasurementBasis(ComplexMatrix u, std::vector<double> parameters);
  ComplexMatrix unitary_;
  std::vector<double> parameters_;
};

/// Free-function spelling of MeasurementBasis::from_parameters.
MeasurementBasis basis_from_parameters(std::size_t dim_b, std::span<const double> parameters);

/// d^2 - d angles: one (theta in [0, pi], phi in [0, 2 pi)) pair per Givens rotation.
std::size_t basis_parameter_count(std::size_t dim_b);

struct OptimizationSettings {
  /// Grid points per basis angle; unset means 24 for dim_b = 2, 8 for dim_b = 3, 2 above.
  std::optional<int> grid_points_per_angle;
  int refine_iterations = 200;
  double refine_tolerance = 1e-10;
  int restarts = 8;

  int grid_points_for(std::size_t dim_b) const;
};

struct CorrelationResult {
  double value = 0.0;  // bits
  MeasurementBasis optimal_basis;
  bool converged = false;
};

/// sum_i (I (x) Pi_i) rho (I (x) Pi_i)
DensityMatrix post_measurement_state(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis);

/// S(rho^D) - S(rho) for a fixed measurement basis.
double deficit_for_basis(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis);
/// S_{A|B}(rho^D) - S_{A|B}(rho) for a fixed measurement basis.
double discord_for_basis(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis);

/// One-way deficit: min over von Neumann bases on B of S(rho^D) - S(rho).
CorrelationResult one_way_deficit(const DensityMatrix& rho, BipartiteDims dims, const OptimizationSettings& settings = {});

/// Discord: min over von Neumann bases on B of S_{A|B}(rho^D) - S_{A|B}(rho).
CorrelationResult quantum_discord(const DensityMatrix& rho, BipartiteDims dims, const OptimizationSettings& settings = {});

/// One product component p_i xi_A^i (x) xi_B^i of a separable state.
struct SeparableTerm {
  double weight;
  ComplexMatrix xi_a;
  ComplexMatrix xi_b;
};

struct ZeroDiscordCheck {
  bool zero_discord = false;
  double max_commutator_norm = 0.0;
};

/// A separable state has zero discord iff all B components pairwise commute.
ZeroDiscordCheck zero_discord_separable_check(std::span<const SeparableTerm> terms,
                                              double tolerance = tol::kClassification);

}  // namespace qcorr
