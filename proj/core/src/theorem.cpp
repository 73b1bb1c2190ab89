#include "qcorr/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

constexpr std::size_t kQubit = 2;
constexpr int kWitnessGrid = 48;
constexpr int kReportGrid = 12;

void require_qubit(const KrausChannel& channel, const char* what) {
  if (channel.dim() != kQubit) {
    throw DimensionError(std::string(what) + ": only qubit channels are classified (got dim " +
                         std::to_string(channel.dim()) + "); use qutrit_counterexample for d = 3");
  }
}

ClassicalQuantumEnsemble flagged_ensemble(const ComplexMatrix& u) {
  std::vector<CqTerm> terms;
  terms.push_back({0.5, DensityMatrix::pure(basis_ket(kQubit, 0)), column(u, 0)});
  terms.push_back({0.5, DensityMatrix::pure(basis_ket(kQubit, 1)), column(u, 1)});
  return ClassicalQuantumEnsemble({kQubit, kQubit}, std::move(terms));
}

}  // namespace

double witness_commutator(const KrausChannel& channel, double theta, double phi) {
  const double params[] = {theta, phi};
  const ComplexMatrix u = unitary_from_angles(channel.dim(), params);
  const ComplexMatrix out0 = channel(projector(column(u, 0)));
  const ComplexMatrix out1 = channel(projector(column(u, 1)));
  return frobenius_norm(commutator(out0, out1));
}

double unitality_commutator(const KrausChannel& channel, const ComplexMatrix& rho) {
  return frobenius_norm(commutator(unitality_operator(channel), channel(rho)));
}

Witness find_witness(const KrausChannel& channel, const OptimizationSettings& settings) {
  require_qubit(channel, "find_witness");
  const double lower[] = {0.0, 0.0};
  const double upper[] = {std::numbers::pi, 2.0 * std::numbers::pi};
  MultistartOptions options;
  options.grid_points = kWitnessGrid;
  options.restarts = 1;
  options.refine.max_iterations = settings.refine_iterations;
  options.refine.tolerance = settings.refine_tolerance;
  options.refine.initial_step = std::numbers::pi / kWitnessGrid;
  const Objective negated = [&](std::span<const double> x) { return -witness_commutator(channel, x[0], x[1]); };
  const auto best = multistart_minimize(negated, lower, upper, options);
  const double norm = -best.value;
  if (norm < tol::kClassification) {
    throw WitnessNotFound("find_witness: max commutator norm " + std::to_string(norm) +
                          " is below tolerance; the channel cannot create correlation");
  }

  const ComplexMatrix u = unitary_from_angles(kQubit, best.x);
  Witness w{flagged_ensemble(u), {best.x[0], best.x[1]}, norm, 0.0, 0.0, false};
  const DensityMatrix image = apply_on_b(channel, assemble_cq_state(w.ensemble), kQubit);
  const auto discord = quantum_discord(image, {kQubit, kQubit}, settings);
  const auto deficit = one_way_deficit(image, {kQubit, kQubit}, settings);
  w.discord = discord.value;
  w.deficit = deficit.value;
  w.converged = discord.converged && deficit.converged;
  if (w.discord <= tol::kWitnessValue || w.deficit <= tol::kWitnessValue) {
    throw WitnessNotFound("find_witness: best basis creates discord " + std::to_string(w.discord) + " and deficit " +
                          std::to_string(w.deficit) + ", not above " + std::to_string(tol::kWitnessValue));
  }
  return w;
}

ClassificationReport classify_qubit_channel(const KrausChannel& channel, double tolerance,
                                            const OptimizationSettings& settings) {
  require_qubit(channel, "classify_qubit_channel");
  ClassificationReport report;
  report.channel_class = structural_class(channel, tolerance);
  const double lower[] = {0.0, 0.0};
  const double upper[] = {std::numbers::pi, 2.0 * std::numbers::pi};
  for_each_grid_point(lower, upper, kReportGrid, [&](std::span<const double> x) {
    report.commutator_scan.push_back({{x[0], x[1]}, witness_commutator(channel, x[0], x[1])});
  });
  if (report.channel_class.kind == ChannelKind::Neither) report.witness = find_witness(channel, settings);
  return report;
}

ClassicalQuantumEnsemble plus_minus_ensemble(double w0) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<CqTerm> terms;
  terms.push_back({w0, DensityMatrix::pure(basis_ket(kQubit, 0)), ComplexVector{r, r}});
  terms.push_back({1.0 - w0, DensityMatrix::pure(basis_ket(kQubit, 1)), ComplexVector{r, -r}});
  return ClassicalQuantumEnsemble({kQubit, kQubit}, std::move(terms));
}

Theorem1Report verify_theorem1(const KrausChannel& channel, std::size_t states, std::uint64_t seed,
                               const OptimizationSettings& settings, double tolerance) {
  require_qubit(channel, "verify_theorem1");
  Theorem1Report report;
  report.channel_class = structural_class(channel, tolerance);
  report.states = states;
  Rng rng(seed);
  const BipartiteDims dims{kQubit, kQubit};
  for (std::size_t i = 0; i < states; ++i) {
    const auto ensemble = i == 0 ? plus_minus_ensemble() : random_cq_ensemble(dims, rng);
    const DensityMatrix image = apply_on_b(channel, assemble_cq_state(ensemble), kQubit);
    const auto deficit = one_way_deficit(image, dims, settings);
    const auto discord = quantum_discord(image, dims, settings);
    report.max_deficit = std::max(report.max_deficit, deficit.value);
    report.max_discord = std::max(report.max_discord, discord.value);
    report.converged = report.converged && deficit.converged && discord.converged;
  }
  report.all_below = report.max_deficit < tol::kWitnessValue && report.max_discord < tol::kWitnessValue;
  if (report.channel_class.kind == ChannelKind::Neither) {
    try {
      report.witness = find_witness(channel, settings);
    } catch (const WitnessNotFound&) {
      report.witness.reset();
    }
    report.consistent = report.witness.has_value();
  } else {
    report.consistent = report.all_below;
  }
  return report;
}

ComplexMatrix qutrit_commutator_pattern() {
  const double h = 0.5;
  const double q = 1.0 / (2.0 * std::sqrt(2.0));
  return {{0.0, h, -q}, {-h, 0.0, -q}, {q, q, 0.0}};
}

QutritReport qutrit_counterexample(double e0, double e1, const OptimizationSettings& settings) {
  const double norm_sq = e0 * e0 + e1 * e1;
  if (!(e0 >= 0.0 && e1 >= 0.0) || std::abs(norm_sq - 1.0) > 1e-6) {
    throw ValidationError("qutrit_counterexample: need e0, e1 >= 0 with e0^2 + e1^2 = 1 (got " +
                          std::to_string(norm_sq) + ")");
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  QutritReport report;
  report.e0 = e0 * scale;
  report.e1 = e1 * scale;
  const KrausChannel channel = qutrit_paper_channel(report.e0, report.e1);
  report.mixing = is_mixing(channel);

  const ComplexVector k0 = basis_ket(3, 0);
  const ComplexVector k1 = basis_ket(3, 1);
  report.commutator = commutator(channel(projector(k0)), channel(projector(k1)));
  report.commutator_norm = frobenius_norm(report.commutator);
  const ComplexMatrix pattern = qutrit_commutator_pattern();
  report.coefficient = hs_inner(pattern, report.commutator).real() / hs_inner(pattern, pattern).real();
  if (report.commutator_norm > 0.0) {
    report.shape_error =
        frobenius_distance(report.commutator, Complex(report.coefficient, 0.0) * pattern) / report.commutator_norm;
  }

  std::vector<CqTerm> terms;
  terms.push_back({0.5, DensityMatrix::pure(k0), k0});
  terms.push_back({0.5, DensityMatrix::pure(k1), k1});
  const ClassicalQuantumEnsemble ensemble({3, 3}, std::move(terms));
  const DensityMatrix image = apply_on_b(channel, assemble_cq_state(ensemble), 3);
  report.deficit = one_way_deficit(image, {3, 3}, settings);
  report.discord = quantum_discord(image, {3, 3}, settings);
  return report;
}

AmplitudeDampingDemo amplitude_damping_demo(double p, const OptimizationSettings& settings, double tolerance) {
  const KrausChannel channel = amplitude_damping(p);
  const DensityMatrix image = apply_on_b(channel, assemble_cq_state(plus_minus_ensemble()), kQubit);
  return {p, classify_qubit_channel(channel, tolerance, settings), one_way_deficit(image, {kQubit, kQubit}, settings),
          quantum_discord(image, {kQubit, kQubit}, settings)};
}

}  // namespace qcorr
