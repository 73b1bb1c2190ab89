#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  if (!all_finite()) {
    throw ValidationError("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("ComplexMatrix: ragged initializer list");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) {
    throw ValidationError("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.data()) z = std::conj(z);
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  return multiply(a, b) - multiply(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "anticommutator");
  require_same_shape(a, b, "anticommutator");
  return multiply(a, b) + multiply(b, a);
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
  return s;
}

ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionError("matvec: vector length does not match matrix columns");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

ComplexVector column(const ComplexMatrix& m, std::size_t c) {
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, c);
  return out;
}

ComplexMatrix from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) return {};
  const std::size_t n = columns.front().size();
  ComplexMatrix m(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != n) throw DimensionError("from_columns: ragged columns");
    for (std::size_t r = 0; r < n; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

ComplexMatrix projector(std::span<const Complex> ket) { return outer(ket, ket); }

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner: length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

ComplexVector basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_ket: index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.is_square() && hermiticity_defect(m) <= tolerance;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  require_square(m, "hermitian_part");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return out;
}

double unitarity_defect(const ComplexMatrix& m) {
  require_square(m, "unitarity_defect");
  return frobenius_distance(multiply(dagger(m), m), ComplexMatrix::identity(m.rows()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep) {
  if (!m.is_square() || m.rows() != dims.total() || dims.a == 0 || dims.b == 0) {
    throw DimensionError("partial_trace: matrix of size " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match dims (" + std::to_string(dims.a) + ", " +
                         std::to_string(dims.b) + ")");
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out(dims.a, dims.a);
    for (std::size_t i = 0; i < dims.a; ++i)
      for (std::size_t j = 0; j < dims.a; ++j)
        for (std::size_t k = 0; k < dims.b; ++k) out(i, j) += m(i * dims.b + k, j * dims.b + k);
    return out;
  }
  ComplexMatrix out(dims.b, dims.b);
  for (std::size_t k = 0; k < dims.b; ++k)
    for (std::size_t l = 0; l < dims.b; ++l)
      for (std::size_t i = 0; i < dims.a; ++i) out(k, l) += m(i * dims.b + k, i * dims.b + l);
  return out;
}

namespace {

// Cyclic Jacobi on a Hermitian matrix held in `a` (overwritten). Each
// rotation R = [[c, s e^{i phi}], [-s e^{-i phi}, c]] in the (p, q) plane,
// with a_pq = |a_pq| e^{i phi}, annihilates a_pq under a <- R^dagger a R.
void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows();
  double scale = std::max(1.0, frobenius_norm(a));
  const double threshold = tol::kJacobiOffDiagonal * scale;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) < threshold * 1e-3) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible relative to both diagonals: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex phase = a(p, q) / mag;  // e^{i phi}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex s_phase = s * phase;             // s e^{i phi}
        const Complex s_phase_conj = s * std::conj(phase);  // s e^{-i phi}

        // Columns: a <- a R
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s_phase_conj * akq;
          a(k, q) = s_phase * akp + c * akq;
        }
        // Rows: a <- R^dagger a
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s_phase * aqk;
          a(q, k) = s_phase_conj * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (v != nullptr) {
          ComplexMatrix& vv = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vv(k, p);
            const Complex vkq = vv(k, q);
            vv(k, p) = c * vkp - s_phase_conj * vkq;
            vv(k, q) = s_phase * vkp + c * vkq;
          }
        }
      }
    }
  }
}

ComplexMatrix checked_hermitian_copy(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  const double allowed = tol::kStructural * std::max(1.0, frobenius_norm(m));
  if (hermiticity_defect(m) > allowed) {
    throw ValidationError(std::string(what) + ": matrix is not Hermitian (defect " +
                          std::to_string(hermiticity_defect(m)) + ")");
  }
  return hermitian_part(m);
}

}  // namespace

HermitianEigen hermitian_eigh(const ComplexMatrix& m) {
  ComplexMatrix a = checked_hermitian_copy(m, "hermitian_eigh");
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_sweeps(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  ComplexMatrix a = checked_hermitian_copy(m, "hermitian_eigenvalues");
  const std::size_t n = a.rows();
  std::vector<double> values(n);
  if (n == 1) {
    values[0] = a(0, 0).real();
    return values;
  }
  if (n == 2) {
    // Closed form for the 2x2 case; this is the optimizer hot path.
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_diff = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double radius = std::sqrt(half_diff * half_diff + std::norm(a(0, 1)));
    values[0] = mean - radius;
    values[1] = mean + radius;
    return values;
  }
  jacobi_sweeps(a, nullptr);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square(m, "matrix_exp");
  const std::size_t n = m.rows();
  // Scale so that ||m / 2^s||_F <= 1/2, sum Taylor terms to machine precision, square back.
  const double norm_m = frobenius_norm(m);
  int squarings = 0;
  if (norm_m > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm_m / 0.5)));
  ComplexMatrix scaled = m;
  scaled *= Complex(std::ldexp(1.0, -squarings), 0.0);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = multiply(term, scaled);
    term *= Complex(1.0 / k, 0.0);
    result += term;
    if (frobenius_norm(term) < 1e-18 * std::max(1.0, frobenius_norm(result))) break;
  }
  for (int i = 0; i < squarings; ++i) result = multiply(result, result);
  return result;
}

namespace pauli {

ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
std::vector<ComplexMatrix> basis() { return {ComplexMatrix::identity(2), x(), y(), z()}; }

}  // namespace pauli

std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d) {
  std::vector<ComplexMatrix> out;
  out.reserve(d * d);
  out.push_back(ComplexMatrix::identity(d));
  // Symmetric and antisymmetric off-diagonal generators.
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix sym(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      out.push_back(std::move(sym));
      ComplexMatrix anti(d, d);
      anti(j, k) = Complex(0.0, -1.0);
      anti(k, j) = Complex(0.0, 1.0);
      out.push_back(std::move(anti));
    }
  // Diagonal generators.
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix diag(d, d);
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -scale * static_cast<double>(l);
    out.push_back(std::move(diag));
  }
  return out;
}

std::size_t rotation_angle_count(std::size_t d) { return d * d - d; }

ComplexMatrix unitary_from_angles(std::size_t d, std::span<const double> angles, bool with_phases) {
  const std::size_t expected = rotation_angle_count(d) + (with_phases ? d - 1 : 0);
  if (angles.size() != expected) {
    throw DimensionError("unitary_from_angles: expected " + std::to_string(expected) + " angles, got " +
                         std::to_string(angles.size()));
  }
  ComplexMatrix u = ComplexMatrix::identity(d);
  std::size_t idx = 0;
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = p + 1; q < d; ++q) {
      const double theta = angles[idx++];
      const double phi = angles[idx++];
      const double c = std::cos(0.5 * theta);
      const double s = std::sin(0.5 * theta);
      const Complex e = std::polar(1.0, phi);
      // u <- u G_pq with G = [[c, -e^{-i phi} s], [e^{i phi} s, c]]
      for (std::size_t k = 0; k < d; ++k) {
        const Complex ukp = u(k, p);
        const Complex ukq = u(k, q);
        u(k, p) = c * ukp + e * s * ukq;
        u(k, q) = -std::conj(e) * s * ukp + c * ukq;
      }
    }
  }
  if (with_phases) {
    for (std::size_t c = 1; c < d; ++c) {
      const Complex e = std::polar(1.0, angles[idx++]);
      for (std::size_t k = 0; k < d; ++k) u(k, c) *= e;
    }
  }
  return u;
}

}  // namespace qcorr
