#pragma once

// Every numerical threshold used by the library lives here.

namespace qcorr::tol {

// Default structural tolerance: Hermiticity, unit trace, orthonormality.
inline constexpr double kStructural = 1e-10;

// Cyclic Jacobi stops once the off-diagonal Frobenius mass drops below this
// (scaled by max(1, ||A||_F)).
inline constexpr double kJacobiOffDiagonal = 1e-12;

// Density matrices may carry eigenvalues down to -kPsdClip; they are clamped
// to zero before entropies are taken. Anything more negative is rejected.
inline constexpr double kPsdClip = 1e-9;

// Eigenvalues below this contribute nothing to -sum l log l.
inline constexpr double kEntropyCutoff = 1e-12;

// sum_i E_i^dagger E_i = I
inline constexpr double kTracePreserving = 1e-9;

// Frobenius defects separating "unital" / "completely decohering" from "neither".
inline constexpr double kClassification = 1e-8;

// ||L(I)||_F threshold for a classicality-preserving Lindblad generator.
inline constexpr double kLindbladFixedPoint = 1e-9;

// PSD requirement on the dissipative block of the Lindblad coefficient matrix.
inline constexpr double kLindbladPsd = 1e-9;

// State produced by evolve() may drift this far from a density matrix before
// it is reported as an error (signals a non-PSD generator).
inline constexpr double kEvolvedState = 1e-7;

// Witness acceptance: created discord and deficit must exceed this.
inline constexpr double kWitnessValue = 1e-6;

// Best two optimizer restarts must agree to this for converged=true.
inline constexpr double kRestartAgreement = 1e-6;

}  // namespace qcorr::tol
