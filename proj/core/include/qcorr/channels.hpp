#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

/// Trace-preserving CP map rho -> sum_i E_i rho E_i^dagger on a d-level system.
/// Kraus lists are kept exactly as given; two channels are "equal" when they act
/// identically on an operator basis (see same_action), never by comparing lists.
class KrausChannel {
 public:
  /// Throws DimensionError for empty / non-square / mixed-size operators and
  /// ValidationError when sum_i E_i^dagger E_i differs from I by more than
  /// tol::kTracePreserving.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  /// Linear action on an arbitrary d x d operator.
  ComplexMatrix operator()(const ComplexMatrix& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// sum_i E_i E_i^dagger, i.e. d * Lambda(I/d).
ComplexMatrix unitality_operator(const KrausChannel& channel);

struct MixingTest {
  bool mixing = false;
  double defect = 0.0;  // ||sum_i E_i E_i^dagger - I||_F
};

/// Unitality test. For qubits this is exactly the "never lowers entropy"
/// property; for d > 2 it is necessary for that property and satisfied by every
/// mixture of unitaries, but is not claimed to be equivalent.
MixingTest is_mixing(const KrausChannel& channel, double tolerance = tol::kClassification);

struct DecoherenceTest {
  bool decohering = false;
  std::optional<ComplexMatrix> basis;  // U with U^dagger Lambda(rho) U diagonal for all rho
  double defect = 0.0;                 // max pairwise ||[Lambda(F_a), Lambda(F_b)]||_F over probes
};

/// Probes the channel on I and the generalized Gell-Mann matrices; the channel
/// is completely decohering iff every pair of probe outputs commutes.
DecoherenceTest is_completely_decohering(const KrausChannel& channel, double tolerance = tol::kClassification);

/// {I_dA (x) E_i}
KrausChannel extend_on_b(const KrausChannel& channel, std::size_t dim_a);

/// (I (x) Lambda)(X) for a matrix X on C^dim_a (x) C^d without materializing the
/// extended Kraus set.
ComplexMatrix apply_on_b(const KrausChannel& channel, const ComplexMatrix& x, std::size_t dim_a);
DensityMatrix apply_on_b(const KrausChannel& channel, const DensityMatrix& rho, std::size_t dim_a);

/// {E_i^dagger}. Only trace preserving (hence a channel) when the input is unital;
/// throws ValidationError otherwise.
KrausChannel conjugate_channel(const KrausChannel& channel);

/// Compares the action of two channels on the Hermitian operator basis.
double action_distance(const KrausChannel& a, const KrausChannel& b);
bool same_action(const KrausChannel& a, const KrausChannel& b, double tolerance = tol::kStructural);

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const ComplexMatrix& u);

/// E0 = [[1, 0], [0, sqrt(1-p)]], E1 = [[0, sqrt(p)], [0, 0]].
KrausChannel amplitude_damping(double p);
/// {sqrt(1-p) I, sqrt(p) sigma_z}
KrausChannel dephasing(double p);
/// rho -> (1-p) rho + p I/2, Kraus {sqrt(1-3p/4) I, sqrt(p/4) sigma_{x,y,z}}.
KrausChannel depolarizing(double p);
/// rho -> sum_i w_i u_i rho u_i^dagger; weights must be non-negative and sum to 1.
KrausChannel mixture_of_unitaries(std::span<const double> weights, std::span<const ComplexMatrix> unitaries);
/// Qutrit mixture of unitaries: E0 = e0 I_3, E1 = e1 M with
/// M = [[1/2, 1/2, 1/sqrt2], [1/2, 1/2, -1/sqrt2], [1/sqrt2, -1/sqrt2, 0]].
KrausChannel qutrit_paper_channel(double e0, double e1);
ComplexMatrix qutrit_mixing_unitary();

/// Stinespring sample: E_i = <i|_R U |0>_R for Haar U on dim * env_dim.
KrausChannel random_channel(std::size_t dim, std::size_t env_dim, Rng& rng);
/// Mixture of k Haar unitaries with Dirichlet(1, ..., 1) weights.
KrausChannel random_unital_channel(std::size_t dim, std::size_t k, Rng& rng);

enum class ChannelKind { MixingOnly, CompletelyDecoheringOnly, Both, Neither };

std::string_view to_string(ChannelKind kind);

struct ChannelClass {
  ChannelKind kind = ChannelKind::Neither;
  double unitality_defect = 0.0;
  double decoherence_defect = 0.0;
  std::optional<ComplexMatrix> decohering_basis;
};

/// Combines is_mixing and is_completely_decohering. Valid for any dimension;
/// the qubit-only classification with a witness lives in theorem.hpp.
ChannelClass structural_class(const KrausChannel& channel, double tolerance = tol::kClassification);

}  // namespace qcorr
