#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/correlation.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// ||[Lambda(u|0><0|u^dagger), Lambda(u|1><1|u^dagger)]||_F with u = basis_from_parameters(2, {theta, phi}).
double witness_commutator(const KrausChannel& channel, double theta, double phi);

/// ||[sum_i E_i E_i^dagger, Lambda(rho)]||_F
double unitality_commutator(const KrausChannel& channel, const ComplexMatrix& rho);

struct CommutatorSample {
  std::array<double, 2> basis_params;  // (theta, phi)
  double commutator_norm;
};

struct Witness {
  ClassicalQuantumEnsemble ensemble;  // half-classical input on (2, 2)
  std::array<double, 2> basis_params;
  double commutator_norm = 0.0;
  double discord = 0.0;  // of (I (x) Lambda)(ensemble)
  double deficit = 0.0;
  bool converged = false;
};

/// Scans (theta, phi) on a 48 x 48 grid, refines the maximizer of
/// witness_commutator with a simplex, and evaluates both measures on the image
/// of {(1/2, |0><0|, u|0>), (1/2, |1><1|, u|1>)}.
/// Throws WitnessNotFound when the best commutator is below tol::kClassification
/// or the created correlation does not exceed tol::kWitnessValue.
Witness find_witness(const KrausChannel& channel, const OptimizationSettings& settings = {});

struct ClassificationReport {
  ChannelClass channel_class;
  std::optional<Witness> witness;  // present iff channel_class.kind == Neither
  std::vector<CommutatorSample> commutator_scan;  // 12 x 12 coarse scan of witness_commutator
};

/// Qubit channels only (DimensionError otherwise).
ClassificationReport classify_qubit_channel(const KrausChannel& channel, double tolerance = tol::kClassification,
                                            const OptimizationSettings& settings = {});

/// {(w0, |0><0|, |+>), (1 - w0, |1><1|, |->)}
ClassicalQuantumEnsemble plus_minus_ensemble(double w0 = 0.7);

struct Theorem1Report {
  ChannelClass channel_class;
  std::size_t states = 0;
  double max_deficit = 0.0;
  double max_discord = 0.0;
  bool all_below = false;  // every value < tol::kWitnessValue
  bool converged = true;
  std::optional<Witness> witness;  // Neither-class channels only
  /// Case 1/2 channels created nothing, or a Neither channel has a witness.
  bool consistent = false;
};

/// Samples `states` half-classical two-qubit states (the first is plus_minus_ensemble()),
/// applies I (x) Lambda and records both measures.
Theorem1Report verify_theorem1(const KrausChannel& channel, std::size_t states, std::uint64_t seed,
                               const OptimizationSettings& settings = {}, double tolerance = tol::kClassification);

/// Antisymmetric commutator pattern expected for the qutrit mixing channel.
ComplexMatrix qutrit_commutator_pattern();

struct QutritReport {
  double e0 = 0.0;
  double e1 = 0.0;
  MixingTest mixing;
  ComplexMatrix commutator;        // [Lambda(|0><0|), Lambda(|1><1|)]
  double commutator_norm = 0.0;
  double coefficient = 0.0;        // least-squares c in commutator ~ c * pattern
  double shape_error = 0.0;        // ||commutator - c pattern||_F / ||commutator||_F (0 when the commutator vanishes)
  CorrelationResult deficit;       // of (I (x) Lambda)(1/2 |00><00| + 1/2 |11><11|) on (3, 3)
  CorrelationResult discord;
};

/// Accepts e0, e1 >= 0 with |e0^2 + e1^2 - 1| <= 1e-6 and renormalizes them.
QutritReport qutrit_counterexample(double e0, double e1, const OptimizationSettings& settings = {});

struct AmplitudeDampingDemo {
  double p = 0.0;
  ClassificationReport classification;
  CorrelationResult deficit;  // of (I (x) AD_p)(plus_minus_ensemble())
  CorrelationResult discord;
};

AmplitudeDampingDemo amplitude_damping_demo(double p, const OptimizationSettings& settings = {},
                                            double tolerance = tol::kClassification);

}  // namespace qcorr
