#include "qcorr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + ": parameter p=" + std::to_string(p) + " outside [0, 1]");
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("KrausChannel: empty Kraus list");
  dim_ = kraus_.front().rows();
  if (dim_ == 0) throw DimensionError("KrausChannel: zero-dimensional Kraus operator");
  ComplexMatrix completeness(dim_, dim_);
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    const auto& e = kraus_[i];
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw DimensionError("KrausChannel: Kraus operator " + std::to_string(i) + " is not " + std::to_string(dim_) +
                           "x" + std::to_string(dim_));
    }
    if (!e.all_finite()) throw ValidationError("KrausChannel: non-finite Kraus entry");
    completeness += multiply(dagger(e), e);
  }
  const double defect = frobenius_distance(completeness, ComplexMatrix::identity(dim_));
  if (defect > tol::kTracePreserving) {
    throw ValidationError("KrausChannel: not trace preserving, ||sum E^dagger E - I||_F = " + std::to_string(defect));
  }
}

ComplexMatrix KrausChannel::operator()(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionError("KrausChannel: operand is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         ", channel acts on dimension " + std::to_string(dim_));
  }
  ComplexMatrix out(dim_, dim_);
  for (const auto& e : kraus_) out += multiply(multiply(e, x), dagger(e));
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(channel(rho.matrix())));
}

ComplexMatrix unitality_operator(const KrausChannel& channel) {
  ComplexMatrix sum(channel.dim(), channel.dim());
  for (const auto& e : channel.kraus()) sum += multiply(e, dagger(e));
  return sum;
}

MixingTest is_mixing(const KrausChannel& channel, double tolerance) {
  const double defect = frobenius_distance(unitality_operator(channel), ComplexMatrix::identity(channel.dim()));
  return {defect < tolerance, defect};
}

DecoherenceTest is_completely_decohering(const KrausChannel& channel, double tolerance) {
  const auto probes = hermitian_operator_basis(channel.dim());
  std::vector<ComplexMatrix> outputs;
  outputs.reserve(probes.size());
  for (const auto& f : probes) outputs.push_back(hermitian_part(channel(f)));

  DecoherenceTest result;
  for (std::size_t i = 0; i < outputs.size(); ++i)
    for (std::size_t j = i + 1; j < outputs.size(); ++j)
      result.defect = std::max(result.defect, frobenius_norm(commutator(outputs[i], outputs[j])));
  if (result.defect >= tolerance) return result;

  // Outputs commute: diagonalize a random real combination and check that the
  // eigenbasis diagonalizes every probe output. A degenerate draw can return a
  // basis that only block-diagonalizes; redraw up to five times.
  Rng rng(0x5eed0fdecull);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  for (int attempt = 0; attempt < 5; ++attempt) {
    ComplexMatrix combo(channel.dim(), channel.dim());
    for (const auto& out : outputs) combo += Complex(coeff(rng), 0.0) * out;
    const auto eig = hermitian_eigh(hermitian_part(combo));
    const ComplexMatrix& u = eig.eigenvectors;
    double off_diagonal = 0.0;
    for (const auto& out : outputs) {
      const ComplexMatrix rotated = multiply(multiply(dagger(u), out), u);
      for (std::size_t r = 0; r < rotated.rows(); ++r)
        for (std::size_t c = 0; c < rotated.cols(); ++c)
          if (r != c) off_diagonal = std::max(off_diagonal, std::abs(rotated(r, c)));
    }
    if (off_diagonal < tolerance) {
      result.decohering = true;
      result.basis = u;
      return result;
    }
  }
  return result;
}

KrausChannel extend_on_b(const KrausChannel& channel, std::size_t dim_a) {
  const ComplexMatrix id = ComplexMatrix::identity(dim_a);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& e : channel.kraus()) kraus.push_back(tensor_product(id, e));
  return KrausChannel(std::move(kraus));
}

ComplexMatrix apply_on_b(const KrausChannel& channel, const ComplexMatrix& x, std::size_t dim_a) {
  const std::size_t db = channel.dim();
  if (!x.is_square() || x.rows() != dim_a * db) {
    throw DimensionError("apply_on_b: operand of size " + std::to_string(x.rows()) + " does not match " +
                         std::to_string(dim_a) + " x " + std::to_string(db));
  }
  ComplexMatrix out(x.rows(), x.cols());
  ComplexMatrix block(db, db);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) block(k, l) = x(i * db + k, j * db + l);
      const ComplexMatrix mapped = channel(block);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = mapped(k, l);
    }
  return out;
}

DensityMatrix apply_on_b(const KrausChannel& channel, const DensityMatrix& rho, std::size_t dim_a) {
  return DensityMatrix(hermitian_part(apply_on_b(channel, rho.matrix(), dim_a)));
}

KrausChannel conjugate_channel(const KrausChannel& channel) {
  const auto test = is_mixing(channel, tol::kTracePreserving);
  if (!test.mixing) {
    throw ValidationError("conjugate_channel: channel is not unital (defect " + std::to_string(test.defect) +
                          "), its adjoint is not trace preserving");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& e : channel.kraus()) kraus.push_back(dagger(e));
  return KrausChannel(std::move(kraus));
}

double action_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw DimensionError("action_distance: channels act on different dimensions");
  double worst = 0.0;
  for (const auto& f : hermitian_operator_basis(a.dim())) worst = std::max(worst, frobenius_distance(a(f), b(f)));
  return worst;
}

bool same_action(const KrausChannel& a, const KrausChannel& b, double tolerance) {
  return a.dim() == b.dim() && action_distance(a, b) < tolerance;
}

KrausChannel identity_channel(std::size_t dim) { return KrausChannel({ComplexMatrix::identity(dim)}); }

KrausChannel unitary_channel(const ComplexMatrix& u) { return KrausChannel({u}); }

KrausChannel amplitude_damping(double p) {
  require_probability(p, "amplitude_damping");
  ComplexMatrix e0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}};
  ComplexMatrix e1{{0.0, std::sqrt(p)}, {0.0, 0.0}};
  return KrausChannel({std::move(e0), std::move(e1)});
}

KrausChannel dephasing(double p) {
  require_probability(p, "dephasing");
  return KrausChannel({Complex(std::sqrt(1.0 - p), 0.0) * ComplexMatrix::identity(2),
                       Complex(std::sqrt(p), 0.0) * pauli::z()});
}

KrausChannel depolarizing(double p) {
  require_probability(p, "depolarizing");
  const Complex keep(std::sqrt(1.0 - 0.75 * p), 0.0);
  const Complex flip(std::sqrt(0.25 * p), 0.0);
  return KrausChannel({keep * ComplexMatrix::identity(2), flip * pauli::x(), flip * pauli::y(), flip * pauli::z()});
}

KrausChannel mixture_of_unitaries(std::span<const double> weights, std::span<const ComplexMatrix> unitaries) {
  if (weights.size() != unitaries.size() || weights.empty()) {
    throw DimensionError("mixture_of_unitaries: need one weight per unitary");
  }
  double total = 0.0;
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw ValidationError("mixture_of_unitaries: negative weight");
    if (!unitaries[i].is_square() || unitarity_defect(unitaries[i]) > tol::kStructural) {
      throw ValidationError("mixture_of_unitaries: operator " + std::to_string(i) + " is not unitary");
    }
    total += weights[i];
    kraus.push_back(Complex(std::sqrt(weights[i]), 0.0) * unitaries[i]);
  }
  if (std::abs(total - 1.0) > tol::kStructural) {
    throw ValidationError("mixture_of_unitaries: weights sum to " + std::to_string(total));
  }
  return KrausChannel(std::move(kraus));
}

ComplexMatrix qutrit_mixing_unitary() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{0.5, 0.5, r}, {0.5, 0.5, -r}, {r, -r, 0.0}};
}

KrausChannel qutrit_paper_channel(double e0, double e1) {
  if (e0 < 0.0 || e1 < 0.0 || std::abs(e0 * e0 + e1 * e1 - 1.0) > tol::kStructural) {
    throw ValidationError("qutrit_paper_channel: need e0, e1 >= 0 with e0^2 + e1^2 = 1");
  }
  return KrausChannel({Complex(e0, 0.0) * ComplexMatrix::identity(3), Complex(e1, 0.0) * qutrit_mixing_unitary()});
}

KrausChannel random_channel(std::size_t dim, std::size_t env_dim, Rng& rng) {
  if (dim == 0 || env_dim == 0) throw DimensionError("random_channel: dimensions must be positive");
  // Joint ordering |s>|r>: E_i(s, s') = U(s * env + i, s' * env + 0).
  const ComplexMatrix u = haar_unitary(dim * env_dim, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(env_dim);
  for (std::size_t i = 0; i < env_dim; ++i) {
    ComplexMatrix e(dim, dim);
    for (std::size_t s = 0; s < dim; ++s)
      for (std::size_t sp = 0; sp < dim; ++sp) e(s, sp) = u(s * env_dim + i, sp * env_dim);
    kraus.push_back(std::move(e));
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel random_unital_channel(std::size_t dim, std::size_t k, Rng& rng) {
  if (dim == 0 || k == 0) throw DimensionError("random_unital_channel: dim and k must be positive");
  const auto weights = dirichlet_uniform(k, rng);
  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(k);
  for (std::size_t i = 0; i < k; ++i) unitaries.push_back(haar_unitary(dim, rng));
  return mixture_of_unitaries(weights, unitaries);
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::MixingOnly:
      return "MixingOnly";
    case ChannelKind::CompletelyDecoheringOnly:
      return "CompletelyDecoheringOnly";
    case ChannelKind::Both:
      return "Both";
    case ChannelKind::Neither:
      return "Neither";
  }
  return "Neither";
}

ChannelClass structural_class(const KrausChannel& channel, double tolerance) {
  const auto mixing = is_mixing(channel, tolerance);
  auto decohering = is_completely_decohering(channel, tolerance);
  ChannelClass out;
  out.unitality_defect = mixing.defect;
  out.decoherence_defect = decohering.defect;
  out.decohering_basis = std::move(decohering.basis);
  if (mixing.mixing && decohering.decohering) {
    out.kind = ChannelKind::Both;
  } else if (mixing.mixing) {
    out.kind = ChannelKind::MixingOnly;
  } else if (decohering.decohering) {
    out.kind = ChannelKind::CompletelyDecoheringOnly;
  } else {
    out.kind = ChannelKind::Neither;
  }
  return out;
}

}  // namespace qcorr
