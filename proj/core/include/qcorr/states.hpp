#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

/// A validated density matrix: Hermitian, unit trace and PSD, each within
/// the tolerances in tolerances.hpp. The stored matrix is the Hermitian part
/// of the input.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& mat);

  static DensityMatrix pure(std::span<const Complex> ket);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  ComplexMatrix mat_;
};

/// -sum l log2 l over the spectrum; values in [-tol::kPsdClip, kEntropyCutoff) contribute nothing.
double entropy_of_spectrum(std::span<const double> eigenvalues);
double binary_entropy(double p);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix reduced_state(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep);

/// S(rho_AB) - S(rho_B)
double conditional_entropy(const DensityMatrix& rho_ab, BipartiteDims dims);

/// One branch p_i * rho_A^i (x) |b_i><b_i| of a half-classical state.
struct CqTerm {
  double weight;
  DensityMatrix block_a;
  ComplexVector ket_b;
};

/// sum_i p_i rho_A^i (x) |b_i><b_i| with {|b_i>} orthonormal on B. Blocks are
/// stored normalized with explicit weights; that assembles to the same state as
/// carrying unnormalized per-branch blocks.
class ClassicalQuantumEnsemble {
 public:
  /// Throws ValidationError if kets are not orthonormal, weights are negative or
  /// do not sum to one, or blocks have the wrong dimension.
  ClassicalQuantumEnsemble(BipartiteDims dims, std::vector<CqTerm> terms);

  BipartiteDims dims() const noexcept { return dims_; }
  const std::vector<CqTerm>& terms() const noexcept { return terms_; }

 private:
  BipartiteDims dims_;
  std::vector<CqTerm> terms_;
};

DensityMatrix assemble_cq_state(const ClassicalQuantumEnsemble& ensemble);

/// Hilbert-Schmidt random state G G^dagger / Tr(G G^dagger).
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng);
DensityMatrix random_density_matrix(std::size_t dim, std::uint64_t seed);

/// Haar-random unit vector.
ComplexVector random_pure_ket(std::size_t dim, Rng& rng);
ComplexVector random_pure_ket(std::size_t dim, std::uint64_t seed);

/// Random half-classical state: Dirichlet weights, HS-random A blocks and the
/// columns of a Haar unitary as the B basis.
ClassicalQuantumEnsemble random_cq_ensemble(BipartiteDims dims, Rng& rng);

/// Purity Tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace qcorr
