#pragma once

#include "qcorr/channels.hpp"
#include "qcorr/correlation.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct SingletFractionResult {
  double fraction = 0.0;  // F = max_Phi <Phi|rho|Phi>, in [1/d^2, 1]
  double fidelity = 0.0;  // f = (d F + 1) / (d + 1)
  ComplexVector optimal_mes;
  bool converged = false;
};

double teleportation_fidelity(double singlet_fraction, std::size_t d);

/// (I (x) U) sum_i |ii> / sqrt(d)
ComplexVector maximally_entangled(const ComplexMatrix& u);
/// U from d^2 - 1 angles (rotations plus relative phases); covers every
/// maximally entangled vector up to a global phase.
ComplexVector maximally_entangled_from_angles(std::size_t d, std::span<const double> angles);
std::size_t mes_parameter_count(std::size_t d);

/// Maximal singlet fraction of a d x d state by multistart simplex ascent over
/// the local unitary. Settings: grid points default to 12 per angle for d = 2
/// and 4 for d = 3.
SingletFractionResult max_singlet_fraction(const DensityMatrix& rho, std::size_t d,
                                           const OptimizationSettings& settings = {});

/// Xi = sum_i (I (x) E_i^dagger) |Phi><Phi| (I (x) E_i), so that
/// <Phi| (I (x) Lambda)(rho) |Phi> = Tr(rho Xi).
ComplexMatrix xi_operator(const KrausChannel& channel, std::span<const Complex> mes, std::size_t d);

struct MsfComparison {
  double before = 0.0;      // F(rho)
  double after = 0.0;       // F((I (x) Lambda)(rho)), optimized directly
  double after_dual = 0.0;  // max_Phi Tr(rho Xi(Phi)), optimized over the same parametrization
  bool converged = false;
};

MsfComparison msf_after_channel(const DensityMatrix& rho, const KrausChannel& channel, std::size_t d,
                                const OptimizationSettings& settings = {});

}  // namespace qcorr
