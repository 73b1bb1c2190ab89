#include "qcorr/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

double teleportation_fidelity(double singlet_fraction, std::size_t d) {
  const double dd = static_cast<double>(d);
  return (dd * singlet_fraction + 1.0) / (dd + 1.0);
}

ComplexVector maximally_entangled(const ComplexMatrix& u) {
  const std::size_t d = u.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexVector phi(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) phi[i * d + j] = scale * u(j, i);
  return phi;
}

std::size_t mes_parameter_count(std::size_t d) { return d * d - 1; }

ComplexVector maximally_entangled_from_angles(std::size_t d, std::span<const double> angles) {
  return maximally_entangled(unitary_from_angles(d, angles, true));
}

namespace {

double overlap(const ComplexMatrix& rho, std::span<const Complex> phi) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) row += rho(i, j) * phi[j];
    s += std::conj(phi[i]) * row;
  }
  return s.real();
}

struct Maximum {
  double value;
  std::vector<double> x;
  bool converged;
};

// Maximizes g over the d^2 - 1 MES angles.
Maximum maximize_over_mes(std::size_t d, const std::function<double(std::span<const Complex>)>& g,
                          const OptimizationSettings& settings) {
  const std::size_t n = mes_parameter_count(d);
  std::vector<double> lower(n, 0.0);
  std::vector<double> upper(n, 2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < rotation_angle_count(d); k += 2) upper[k] = std::numbers::pi;

  MultistartOptions options;
  options.grid_points = settings.grid_points_per_angle.value_or(d <= 2 ? 12 : 4);
  options.restarts = settings.restarts;
  options.refine.max_iterations = settings.refine_iterations;
  options.refine.tolerance = settings.refine_tolerance;
  options.refine.initial_step = std::numbers::pi / static_cast<double>(options.grid_points);
  options.agreement = tol::kRestartAgreement;

  const Objective negated = [&](std::span<const double> x) {
    return -g(maximally_entangled_from_angles(d, x));
  };
  auto best = multistart_minimize(negated, lower, upper, options);
  // With d^2 - 1 parameters a single simplex run can stall; restarting from the
  // incumbent with a fresh simplex is cheap and recovers the lost digits.
  NelderMeadOptions polish = options.refine;
  for (int round = 0; round < 20; ++round) {
    const auto again = nelder_mead(negated, best.x, polish);
    const double gain = best.value - again.value;
    if (gain > 0.0) {
      best.x = again.x;
      best.value = again.value;
    }
    if (!(gain > polish.tolerance)) break;
    polish.initial_step = std::max(polish.initial_step * 0.5, 1e-3);
  }
  return {-best.value, best.x, best.converged};
}

void require_square_bipartite(const DensityMatrix& rho, std::size_t d, const char* what) {
  if (d < 2 || rho.dim() != d * d) {
    throw DimensionError(std::string(what) + ": state of dimension " + std::to_string(rho.dim()) +
                         " is not d x d with d=" + std::to_string(d));
  }
}

}  // namespace

SingletFractionResult max_singlet_fraction(const DensityMatrix& rho, std::size_t d,
                                           const OptimizationSettings& settings) {
  require_square_bipartite(rho, d, "max_singlet_fraction");
  const ComplexMatrix& m = rho.matrix();
  const auto best = maximize_over_mes(d, [&](std::span<const Complex> phi) { return overlap(m, phi); }, settings);
  SingletFractionResult out;
  out.fraction = best.value;
  out.fidelity = teleportation_fidelity(best.value, d);
  out.optimal_mes = maximally_entangled_from_angles(d, best.x);
  out.converged = best.converged;
  return out;
}

ComplexMatrix xi_operator(const KrausChannel& channel, std::span<const Complex> mes, std::size_t d) {
  if (channel.dim() != d || mes.size() != d * d) throw DimensionError("xi_operator: dimension mismatch");
  const ComplexMatrix phi = projector(mes);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  ComplexMatrix xi(d * d, d * d);
  for (const auto& e : channel.kraus()) {
    const ComplexMatrix left = tensor_product(id, dagger(e));
    const ComplexMatrix right = tensor_product(id, e);
    xi += multiply(multiply(left, phi), right);
  }
  return xi;
}

MsfComparison msf_after_channel(const DensityMatrix& rho, const KrausChannel& channel, std::size_t d,
                                const OptimizationSettings& settings) {
  require_square_bipartite(rho, d, "msf_after_channel");
  if (channel.dim() != d) throw DimensionError("msf_after_channel: channel does not act on dimension d");
  const auto before = max_singlet_fraction(rho, d, settings);
  const auto after = max_singlet_fraction(apply_on_b(channel, rho, d), d, settings);
  const ComplexMatrix& m = rho.matrix();
  const auto dual = maximize_over_mes(
      d, [&](std::span<const Complex> phi) { return hs_inner(m, xi_operator(channel, phi, d)).real(); }, settings);
  return {before.fraction, after.fraction, dual.value, before.converged && after.converged && dual.converged};
}

}  // namespace qcorr
