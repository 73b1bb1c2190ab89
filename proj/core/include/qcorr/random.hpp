#pragma once

#include <cstdint>
#include <random>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// All sampling goes through an explicitly seeded generator so that results
/// are reproducible and independent shards never share state.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Matrix of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal made positive.
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);

/// Uniform point on the probability simplex (Dirichlet(1, ..., 1)).
std::vector<double> dirichlet_uniform(std::size_t n, Rng& rng);

}  // namespace qcorr
