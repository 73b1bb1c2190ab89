#pragma once

#include <span>
#include <vector>

#include "qcorr/correlation.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// Time-independent qubit generator
///   L rho = -i[H, rho] + sum_{a,b} gamma_ab (F_a rho F_b^dagger - 1/2 {F_b^dagger F_a, rho})
/// over F = {I, sigma_x, sigma_y, sigma_z} (hbar = 1).
class LindbladGenerator {
 public:
  /// Requires H 2x2 Hermitian and gamma 4x4 Hermitian. With check_psd, the
  /// dissipative block gamma_{ab}, a, b in {1, 2, 3}, must also be PSD within
  /// tol::kLindbladPsd; pass false to explore non-physical coefficient matrices.
  LindbladGenerator(ComplexMatrix hamiltonian, ComplexMatrix gamma, bool check_psd = true);

  /// Decay to |0> at `rate`: gamma_11 = gamma_22 = rate/4, gamma_12 = -i rate/4, gamma_21 = i rate/4,
  /// i.e. the single jump operator sigma_- = |0><1| = (sigma_x + i sigma_y)/2.
  static LindbladGenerator amplitude_damping(double rate);
  /// gamma_33 = rate: coherences decay as exp(-2 rate t).
  static LindbladGenerator dephasing(double rate);

  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const ComplexMatrix& gamma() const noexcept { return gamma_; }

 private:
  ComplexMatrix hamiltonian_;
  ComplexMatrix gamma_;
};

/// Column-stacking vectorization: vec(X)[r + c * d] = X(r, c), so
/// vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim);

/// 4x4 matrix acting on column-stacked qubit operators.
struct Superoperator {
  ComplexMatrix mat;
  ComplexMatrix operator()(const ComplexMatrix& x) const;
};

Superoperator build_superoperator(const LindbladGenerator& generator);

/// L(X) evaluated term by term, without the superoperator.
ComplexMatrix lindblad_action(const LindbladGenerator& generator, const ComplexMatrix& x);

/// exp(L t)
Superoperator propagator(const LindbladGenerator& generator, double t);

/// (I (x) M)(X) for a superoperator M on subsystem B (dim 2) of a dim_a x 2 system.
ComplexMatrix apply_on_b(const Superoperator& map, const ComplexMatrix& x, std::size_t dim_a);

struct ClassicalityTest {
  bool preserves = false;           // ||L(I)||_F < tol::kLindbladFixedPoint
  double fixed_point_defect = 0.0;  // ||L(I)||_F
  bool symmetric_gamma = false;     // outcome of the Im-block test
  double imaginary_defect = 0.0;    // max_{a,b in 1..3} |Im gamma_ab|
};

/// L(I) = 0, equivalently gamma_ab = gamma_ba for a, b in {1, 2, 3}.
/// Both tests are evaluated; `preserves` reports the fixed-point one.
ClassicalityTest preserves_classicality(const LindbladGenerator& generator);

/// exp(L t) applied to rho0. Throws ValidationError if the result leaves the
/// state space by more than tol::kEvolvedState (a non-PSD generator).
DensityMatrix evolve(const LindbladGenerator& generator, const DensityMatrix& rho0, double t);

struct TrajectoryPoint {
  double t = 0.0;
  double deficit = 0.0;
  double discord = 0.0;
  bool converged = true;
};

/// Evolves B of a dim_a x 2 state with I (x) exp(L t) and evaluates both correlation measures at each time.
std::vector<TrajectoryPoint> discord_trajectory(const LindbladGenerator& generator, const DensityMatrix& rho_ab,
                                                std::size_t dim_a, std::span<const double> times,
                                                const OptimizationSettings& settings = {});
std::vector<TrajectoryPoint> discord_trajectory(const LindbladGenerator& generator,
                                                const ClassicalQuantumEnsemble& ensemble,
                                                std::span<const double> times,
                                                const OptimizationSettings& settings = {});

}  // namespace qcorr
