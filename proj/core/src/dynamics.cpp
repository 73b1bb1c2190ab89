#include "qcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

namespace {

constexpr std::size_t kQubit = 2;

const std::vector<ComplexMatrix>& operator_basis() {
  static const std::vector<ComplexMatrix> basis = pauli::basis();
  return basis;
}

}  // namespace

LindbladGenerator::LindbladGenerator(ComplexMatrix hamiltonian, ComplexMatrix gamma, bool check_psd)
    : hamiltonian_(std::move(hamiltonian)), gamma_(std::move(gamma)) {
  if (hamiltonian_.rows() != kQubit || hamiltonian_.cols() != kQubit) {
    throw DimensionError("LindbladGenerator: Hamiltonian must be 2x2");
  }
  if (gamma_.rows() != 4 || gamma_.cols() != 4) throw DimensionError("LindbladGenerator: gamma must be 4x4");
  if (!hamiltonian_.all_finite() || !gamma_.all_finite()) throw ValidationError("LindbladGenerator: non-finite entry");
  if (!is_hermitian(hamiltonian_, tol::kStructural)) throw ValidationError("LindbladGenerator: H is not Hermitian");
  if (!is_hermitian(gamma_, tol::kStructural)) {
    throw ValidationError("LindbladGenerator: gamma is not Hermitian (defect " +
                          std::to_string(hermiticity_defect(gamma_)) + ")");
  }
  hamiltonian_ = hermitian_part(hamiltonian_);
  gamma_ = hermitian_part(gamma_);
  if (check_psd) {
    ComplexMatrix block(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) block(a, b) = gamma_(a + 1, b + 1);
    const double smallest = hermitian_eigenvalues(block).front();
    if (smallest < -tol::kLindbladPsd) {
      throw ValidationError("LindbladGenerator: dissipative block of gamma has negative eigenvalue " +
                            std::to_string(smallest));
    }
  }
}

LindbladGenerator LindbladGenerator::amplitude_damping(double rate) {
  if (!(rate >= 0.0)) throw ValidationError("amplitude_damping generator: rate must be non-negative");
  ComplexMatrix gamma(4, 4);
  gamma(1, 1) = rate / 4.0;
  gamma(2, 2) = rate / 4.0;
  gamma(1, 2) = Complex(0.0, -rate / 4.0);
  gamma(2, 1) = Complex(0.0, rate / 4.0);
  return {ComplexMatrix(2, 2), gamma};
}

LindbladGenerator LindbladGenerator::dephasing(double rate) {
  if (!(rate >= 0.0)) throw ValidationError("dephasing generator: rate must be non-negative");
  ComplexMatrix gamma(4, 4);
  gamma(3, 3) = rate;
  return {ComplexMatrix(2, 2), gamma};
}

ComplexVector vectorize(const ComplexMatrix& x) {
  ComplexVector v(x.rows() * x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r) v[r + c * x.rows()] = x(r, c);
  return v;
}

ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim) {
  if (v.size() != dim * dim) throw DimensionError("unvectorize: length is not dim^2");
  ComplexMatrix x(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) x(r, c) = v[r + c * dim];
  return x;
}

ComplexMatrix Superoperator::operator()(const ComplexMatrix& x) const {
  if (x.rows() * x.cols() != mat.cols()) throw DimensionError("Superoperator: operand size mismatch");
  return unvectorize(matvec(mat, vectorize(x)), x.rows());
}

Superoperator build_superoperator(const LindbladGenerator& generator) {
  const ComplexMatrix id = ComplexMatrix::identity(kQubit);
  const ComplexMatrix& h = generator.hamiltonian();
  const ComplexMatrix& gamma = generator.gamma();
  const auto& f = operator_basis();

  // -i[H, X] -> -i (I (x) H - H^T (x) I)
  ComplexMatrix l = Complex(0.0, -1.0) * (tensor_product(id, h) - tensor_product(transpose(h), id));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const Complex g = gamma(a, b);
      if (g == Complex{}) continue;
      // F_a X F_b^dagger -> conj(F_b) (x) F_a ; {K, X}/2 -> (I (x) K + K^T (x) I)/2 with K = F_b^dagger F_a
      const ComplexMatrix k = multiply(dagger(f[b]), f[a]);
      ComplexMatrix term = tensor_product(conjugate(f[b]), f[a]);
      term -= Complex(0.5, 0.0) * (tensor_product(id, k) + tensor_product(transpose(k), id));
      l += g * term;
    }
  }
  return {std::move(l)};
}

ComplexMatrix lindblad_action(const LindbladGenerator& generator, const ComplexMatrix& x) {
  if (x.rows() != kQubit || x.cols() != kQubit) throw DimensionError("lindblad_action: operand must be 2x2");
  const auto& f = operator_basis();
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(generator.hamiltonian(), x);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const Complex g = generator.gamma()(a, b);
      if (g == Complex{}) continue;
      const ComplexMatrix fb_dag = dagger(f[b]);
      ComplexMatrix term = multiply(multiply(f[a], x), fb_dag);
      term -= Complex(0.5, 0.0) * anticommutator(multiply(fb_dag, f[a]), x);
      out += g * term;
    }
  return out;
}

Superoperator propagator(const LindbladGenerator& generator, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("propagator: time must be finite and non-negative");
  Superoperator l = build_superoperator(generator);
  l.mat *= Complex(t, 0.0);
  return {matrix_exp(l.mat)};
}

ComplexMatrix apply_on_b(const Superoperator& map, const ComplexMatrix& x, std::size_t dim_a) {
  if (!x.is_square() || x.rows() != dim_a * kQubit || map.mat.rows() != kQubit * kQubit) {
    throw DimensionError("apply_on_b: operand does not match dim_a x 2");
  }
  ComplexMatrix out(x.rows(), x.cols());
  ComplexMatrix block(kQubit, kQubit);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      for (std::size_t k = 0; k < kQubit; ++k)
        for (std::size_t l = 0; l < kQubit; ++l) block(k, l) = x(i * kQubit + k, j * kQubit + l);
      const ComplexMatrix mapped = map(block);
      for (std::size_t k = 0; k < kQubit; ++k)
        for (std::size_t l = 0; l < kQubit; ++l) out(i * kQubit + k, j * kQubit + l) = mapped(k, l);
    }
  return out;
}

ClassicalityTest preserves_classicality(const LindbladGenerator& generator) {
  ClassicalityTest out;
  out.fixed_point_defect = frobenius_norm(build_superoperator(generator)(ComplexMatrix::identity(kQubit)));
  out.preserves = out.fixed_point_defect < tol::kLindbladFixedPoint;

  // For Hermitian gamma, L(I) = sum_ab gamma_ab [sigma_a, sigma_b] = -4 sum_{a<b} Im(gamma_ab) eps_abc sigma_c,
  // so ||L(I)||_F = 4 sqrt(2) sqrt(sum_{a<b} Im(gamma_ab)^2) and the threshold below decides identically.
  double sum_sq = 0.0;
  for (std::size_t a = 1; a < 4; ++a)
    for (std::size_t b = 1; b < 4; ++b) {
      const double im = std::abs(generator.gamma()(a, b).imag());
      out.imaginary_defect = std::max(out.imaginary_defect, im);
      if (a < b) sum_sq += im * im;
    }
  out.symmetric_gamma = 4.0 * std::sqrt(2.0) * std::sqrt(sum_sq) < tol::kLindbladFixedPoint;
  return out;
}

namespace {

DensityMatrix checked_state(ComplexMatrix m) {
  m = hermitian_part(m);
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol::kEvolvedState) {
    throw ValidationError("evolve: trace drifted to " + std::to_string(trace));
  }
  m *= Complex(1.0 / trace, 0.0);
  auto eig = hermitian_eigh(m);
  if (eig.eigenvalues.front() < -tol::kEvolvedState) {
    throw ValidationError("evolve: evolved state has eigenvalue " + std::to_string(eig.eigenvalues.front()) +
                          " (generator is not completely positive)");
  }
  if (eig.eigenvalues.front() < -tol::kPsdClip) {
    // Small excursions are clipped back onto the state space.
    double total = 0.0;
    for (auto& l : eig.eigenvalues) {
      l = std::max(l, 0.0);
      total += l;
    }
    for (auto& l : eig.eigenvalues) l /= total;
    m = multiply(multiply(eig.eigenvectors, ComplexMatrix::diagonal(eig.eigenvalues)), dagger(eig.eigenvectors));
  }
  return DensityMatrix(hermitian_part(m));
}

}  // namespace

DensityMatrix evolve(const LindbladGenerator& generator, const DensityMatrix& rho0, double t) {
  if (rho0.dim() != kQubit) throw DimensionError("evolve: state must be a qubit");
  return checked_state(propagator(generator, t)(rho0.matrix()));
}

std::vector<TrajectoryPoint> discord_trajectory(const LindbladGenerator& generator, const DensityMatrix& rho_ab,
                                                std::size_t dim_a, std::span<const double> times,
                                                const OptimizationSettings& settings) {
  const BipartiteDims dims{dim_a, kQubit};
  if (rho_ab.dim() != dims.total()) throw DimensionError("discord_trajectory: state is not dim_a x 2");
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) {
    const DensityMatrix rho_t = checked_state(apply_on_b(propagator(generator, t), rho_ab.matrix(), dim_a));
    const auto deficit = one_way_deficit(rho_t, dims, settings);
    const auto discord = quantum_discord(rho_t, dims, settings);
    out.push_back({t, deficit.value, discord.value, deficit.converged && discord.converged});
  }
  return out;
}

std::vector<TrajectoryPoint> discord_trajectory(const LindbladGenerator& generator,
                                                const ClassicalQuantumEnsemble& ensemble,
                                                std::span<const double> times, const OptimizationSettings& settings) {
  if (ensemble.dims().b != kQubit) throw DimensionError("discord_trajectory: B must be a qubit");
  return discord_trajectory(generator, assemble_cq_state(ensemble), ensemble.dims().a, times, settings);
}

}  // namespace qcorr
