#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Sized for the tiny dimensions of
/// few-qubit / few-qutrit problems; no expression templates, no sparsity.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionError on a size mismatch and ValidationError on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return entries_; }
  std::span<const Complex> data() const noexcept { return entries_; }

  Complex trace() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
/// ||a - b||_F
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// Tr(a^dagger b)
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product.
ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> v);
ComplexVector column(const ComplexMatrix& m, std::size_t c);
ComplexMatrix from_columns(std::span<const ComplexVector> columns);
/// |ket><bra|
ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
/// |ket><ket|
ComplexMatrix projector(std::span<const Complex> ket);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);
ComplexVector basis_ket(std::size_t dim, std::size_t index);

/// max |m - m^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance);
/// (m + m^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// ||m^dagger m - I||_F
double unitarity_defect(const ComplexMatrix& m);

struct BipartiteDims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

/// Partial trace over the complement of `keep` for a matrix on C^a (x) C^b.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

/// Cyclic complex Jacobi. Rejects inputs that are not Hermitian within tol::kStructural
/// (relative to max(1, ||m||_F)).
HermitianEigen hermitian_eigh(const ComplexMatrix& m);
/// Eigenvalues only (ascending); same Jacobi sweep without accumulating vectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(m) by scaling and squaring with a truncated Taylor series.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// {I, sigma_x, sigma_y, sigma_z}
std::vector<ComplexMatrix> basis();
}  // namespace pauli

/// Identity followed by the d^2 - 1 generalized Gell-Mann matrices:
/// a Hermitian basis of the d x d operator space.
std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d);

/// Unitary built from Givens-type rotations G_pq(theta, phi) over all pairs
/// p < q (d^2 - d angles) optionally followed by diag(1, e^{i chi_1}, ...)
/// (d - 1 more phases). Column phases never matter for projectors, so the
/// rotation part alone already reaches every orthonormal basis up to phases.
ComplexMatrix unitary_from_angles(std::size_t d, std::span<const double> angles, bool with_phases = false);
std::size_t rotation_angle_count(std::size_t d);

}  // namespace qcorr
