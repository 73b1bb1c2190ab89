#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

DensityMatrix::DensityMatrix(const ComplexMatrix& mat) {
  if (!mat.is_square() || mat.rows() == 0) {
    throw DimensionError("DensityMatrix: matrix must be square and non-empty");
  }
  if (!mat.all_finite()) throw ValidationError("DensityMatrix: non-finite entry");
  const double herm = hermiticity_defect(mat);
  if (herm > tol::kStructural) {
    throw ValidationError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  mat_ = hermitian_part(mat);
  const double trace_error = std::abs(mat_.trace() - 1.0);
  if (trace_error > tol::kStructural) {
    throw ValidationError("DensityMatrix: trace differs from 1 by " + std::to_string(trace_error));
  }
  const double smallest = hermitian_eigenvalues(mat_).front();
  if (smallest < -tol::kPsdClip) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(smallest));
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  const double n = norm(ket);
  if (std::abs(n - 1.0) > tol::kStructural) throw ValidationError("DensityMatrix::pure: ket is not normalized");
  return DensityMatrix(projector(ket));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= Complex(1.0 / static_cast<double>(dim), 0.0);
  return DensityMatrix(m);
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < -tol::kPsdClip) throw ValidationError("entropy: eigenvalue " + std::to_string(l) + " below PSD tolerance");
    if (l > tol::kEntropyCutoff) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

double binary_entropy(double p) {
  const double q = 1.0 - p;
  const double values[] = {p, q};
  return entropy_of_spectrum(values);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

DensityMatrix reduced_state(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

double conditional_entropy(const DensityMatrix& rho_ab, BipartiteDims dims) {
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(reduced_state(rho_ab, dims, Subsystem::B));
}

ClassicalQuantumEnsemble::ClassicalQuantumEnsemble(BipartiteDims dims, std::vector<CqTerm> terms)
    : dims_(dims), terms_(std::move(terms)) {
  if (dims_.a == 0 || dims_.b == 0) throw DimensionError("ClassicalQuantumEnsemble: zero dimension");
  if (terms_.empty()) throw ValidationError("ClassicalQuantumEnsemble: no terms");
  if (terms_.size() > dims_.b) {
    throw ValidationError("ClassicalQuantumEnsemble: more terms than orthogonal kets available on B");
  }
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.weight < 0.0 || !std::isfinite(t.weight)) throw ValidationError("ClassicalQuantumEnsemble: negative weight");
    if (t.block_a.dim() != dims_.a) throw DimensionError("ClassicalQuantumEnsemble: A block has wrong dimension");
    if (t.ket_b.size() != dims_.b) throw DimensionError("ClassicalQuantumEnsemble: B ket has wrong dimension");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > tol::kStructural) {
    throw ValidationError("ClassicalQuantumEnsemble: weights sum to " + std::to_string(total));
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i; j < terms_.size(); ++j) {
      const Complex overlap = inner(terms_[i].ket_b, terms_[j].ket_b);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > tol::kStructural) {
        throw ValidationError("ClassicalQuantumEnsemble: B kets " + std::to_string(i) + " and " + std::to_string(j) +
                              " are not orthonormal");
      }
    }
  }
}

DensityMatrix assemble_cq_state(const ClassicalQuantumEnsemble& ensemble) {
  const auto dims = ensemble.dims();
  ComplexMatrix out(dims.total(), dims.total());
  for (const auto& t : ensemble.terms()) {
    ComplexMatrix term = tensor_product(t.block_a.matrix(), projector(t.ket_b));
    term *= Complex(t.weight, 0.0);
    out += term;
  }
  return DensityMatrix(out);
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_density_matrix: dim must be positive");
  const ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = multiply(g, dagger(g));
  rho *= Complex(1.0 / rho.trace().real(), 0.0);
  return DensityMatrix(hermitian_part(rho));
}

DensityMatrix random_density_matrix(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(dim, rng);
}

ComplexVector random_pure_ket(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, 1, rng);
  ComplexVector v(g.data().begin(), g.data().end());
  const double n = norm(v);
  for (auto& z : v) z /= n;
  return v;
}

ComplexVector random_pure_ket(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure_ket(dim, rng);
}

ClassicalQuantumEnsemble random_cq_ensemble(BipartiteDims dims, Rng& rng) {
  const auto weights = dirichlet_uniform(dims.b, rng);
  const ComplexMatrix u = haar_unitary(dims.b, rng);
  std::vector<CqTerm> terms;
  terms.reserve(dims.b);
  for (std::size_t i = 0; i < dims.b; ++i) {
    terms.push_back({weights[i], random_density_matrix(dims.a, rng), column(u, i)});
  }
  return ClassicalQuantumEnsemble(dims, std::move(terms));
}

double purity(const DensityMatrix& rho) {
  return hs_inner(rho.matrix(), rho.matrix()).real();
}

}  // namespace qcorr
