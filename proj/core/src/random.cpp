#include "qcorr/random.hpp"

#include <cmath>

namespace qcorr {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = Complex(re, im);
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix q = ginibre(dim, dim, rng);
  // Modified Gram-Schmidt; normalizing each column to a positive R diagonal
  // is exactly the phase fix that makes the QR factor Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap = 0.0;
      for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < dim; ++r) q(r, c) -= overlap * q(r, prev);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < dim; ++r) n += std::norm(q(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < dim; ++r) q(r, c) /= n;
  }
  return q;
}

std::vector<double> dirichlet_uniform(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace qcorr
