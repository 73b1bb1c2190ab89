#include "qcorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

MeasurementBasis::MeasurementBasis(ComplexMatrix u, std::vector<double> parameters)
    : unitary_(std::move(u)), parameters_(std::move(parameters)) {}

MeasurementBasis MeasurementBasis::from_parameters(std::size_t dim_b, std::span<const double> parameters) {
  if (dim_b < 1) throw DimensionError("MeasurementBasis: dim_b must be positive");
  if (parameters.size() != basis_parameter_count(dim_b)) {
    throw DimensionError("MeasurementBasis: expected " + std::to_string(basis_parameter_count(dim_b)) +
                         " parameters for dim_b=" + std::to_string(dim_b) + ", got " +
                         std::to_string(parameters.size()));
  }
  return MeasurementBasis(unitary_from_angles(dim_b, parameters),
                          std::vector<double>(parameters.begin(), parameters.end()));
}

MeasurementBasis MeasurementBasis::from_unitary(const ComplexMatrix& u) {
  if (!u.is_square() || unitarity_defect(u) > tol::kStructural) {
    throw ValidationError("MeasurementBasis: basis matrix is not unitary");
  }
  return MeasurementBasis(u, {});
}

std::vector<ComplexMatrix> MeasurementBasis::projectors() const {
  std::vector<ComplexMatrix> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(projector(ket(i)));
  return out;
}

MeasurementBasis basis_from_parameters(std::size_t dim_b, std::span<const double> parameters) {
  return MeasurementBasis::from_parameters(dim_b, parameters);
}

std::size_t basis_parameter_count(std::size_t dim_b) { return rotation_angle_count(dim_b); }

int OptimizationSettings::grid_points_for(std::size_t dim_b) const {
  if (grid_points_per_angle) return *grid_points_per_angle;
  if (dim_b <= 2) return 24;
  if (dim_b == 3) return 8;
  return 2;
}

namespace {

void require_bipartite(const DensityMatrix& rho, BipartiteDims dims, const char* what) {
  if (dims.a == 0 || dims.b == 0 || rho.dim() != dims.total()) {
    throw DimensionError(std::string(what) + ": state of dimension " + std::to_string(rho.dim()) +
                         " does not match dims (" + std::to_string(dims.a) + ", " + std::to_string(dims.b) + ")");
  }
}

// Post-measurement state is block diagonal: sum_i rhoA~_i (x) |b_i><b_i| with
// rhoA~_i = <b_i| rho |b_i> (unnormalized). Its spectrum is the union of the
// block spectra, and its B marginal has spectrum {Tr rhoA~_i}.
struct MeasuredEntropies {
  double joint = 0.0;     // S(rho^D)
  double marginal = 0.0;  // S(rho^D_B)
};

MeasuredEntropies measured_entropies(const ComplexMatrix& rho, BipartiteDims dims, const ComplexMatrix& u) {
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  MeasuredEntropies out;
  std::vector<double> probabilities(db);
  ComplexMatrix block(da, da);
  for (std::size_t i = 0; i < db; ++i) {
    for (std::size_t a = 0; a < da; ++a) {
      for (std::size_t ap = a; ap < da; ++ap) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < db; ++k) {
          const Complex bk = std::conj(u(k, i));
          if (bk == Complex{}) continue;
          Complex row = 0.0;
          for (std::size_t l = 0; l < db; ++l) row += rho(a * db + k, ap * db + l) * u(l, i);
          s += bk * row;
        }
        block(a, ap) = s;
        block(ap, a) = std::conj(s);
      }
      block(a, a) = block(a, a).real();
    }
    const auto eig = hermitian_eigenvalues(block);
    double p = 0.0;
    for (double l : eig) {
      p += l;
      if (l > tol::kEntropyCutoff) out.joint -= l * std::log2(l);
    }
    probabilities[i] = p;
  }
  out.marginal = entropy_of_spectrum(probabilities);
  return out;
}

enum class Measure { Deficit, Discord };

struct ObjectiveContext {
  const ComplexMatrix& rho;
  BipartiteDims dims;
  Measure measure;
  double joint_entropy;     // S(rho)
  double marginal_entropy;  // S(rho_B)
};

double evaluate(const ObjectiveContext& ctx, const ComplexMatrix& u) {
  const auto measured = measured_entropies(ctx.rho, ctx.dims, u);
  if (ctx.measure == Measure::Deficit) return measured.joint - ctx.joint_entropy;
  return (measured.joint - measured.marginal) - (ctx.joint_entropy - ctx.marginal_entropy);
}

CorrelationResult minimize_measure(const DensityMatrix& rho, BipartiteDims dims, const OptimizationSettings& settings,
                                   Measure measure) {
  require_bipartite(rho, dims, measure == Measure::Deficit ? "one_way_deficit" : "quantum_discord");
  if (settings.refine_iterations < 1 || settings.restarts < 1 || !(settings.refine_tolerance > 0.0)) {
    throw ValidationError("OptimizationSettings: all fields must be positive");
  }
  const std::size_t db = dims.b;
  const ObjectiveContext ctx{rho.matrix(), dims, measure, von_neumann_entropy(rho),
                             von_neumann_entropy(reduced_state(rho, dims, Subsystem::B))};

  if (db == 1) {
    // A single outcome leaves the state untouched.
    return {0.0, MeasurementBasis::from_parameters(1, {}), true};
  }

  const std::size_t n = basis_parameter_count(db);
  std::vector<double> lower(n, 0.0);
  std::vector<double> upper(n);
  for (std::size_t k = 0; k < n; k += 2) {
    upper[k] = std::numbers::pi;
    upper[k + 1] = 2.0 * std::numbers::pi;
  }

  MultistartOptions options;
  options.grid_points = settings.grid_points_for(db);
  if (options.grid_points < 1) throw ValidationError("OptimizationSettings: grid points must be positive");
  options.restarts = settings.restarts;
  options.refine.max_iterations = settings.refine_iterations;
  options.refine.tolerance = settings.refine_tolerance;
  options.refine.initial_step = std::numbers::pi / static_cast<double>(options.grid_points);
  options.agreement = tol::kRestartAgreement;

  const Objective objective = [&](std::span<const double> x) { return evaluate(ctx, unitary_from_angles(db, x)); };
  const auto best = multistart_minimize(objective, lower, upper, options);
  return {best.value, MeasurementBasis::from_parameters(db, best.x), best.converged};
}

}  // namespace

DensityMatrix post_measurement_state(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis) {
  require_bipartite(rho, dims, "post_measurement_state");
  if (basis.dim() != dims.b) throw DimensionError("post_measurement_state: basis dimension differs from dim_b");
  const ComplexMatrix id_a = ComplexMatrix::identity(dims.a);
  ComplexMatrix out(dims.total(), dims.total());
  for (const auto& pi : basis.projectors()) {
    const ComplexMatrix local = tensor_product(id_a, pi);
    out += multiply(multiply(local, rho.matrix()), local);
  }
  return DensityMatrix(hermitian_part(out));
}

double deficit_for_basis(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis) {
  require_bipartite(rho, dims, "deficit_for_basis");
  if (basis.dim() != dims.b) throw DimensionError("deficit_for_basis: basis dimension differs from dim_b");
  const ObjectiveContext ctx{rho.matrix(), dims, Measure::Deficit, von_neumann_entropy(rho), 0.0};
  return evaluate(ctx, basis.unitary());
}

double discord_for_basis(const DensityMatrix& rho, BipartiteDims dims, const MeasurementBasis& basis) {
  require_bipartite(rho, dims, "discord_for_basis");
  if (basis.dim() != dims.b) throw DimensionError("discord_for_basis: basis dimension differs from dim_b");
  const ObjectiveContext ctx{rho.matrix(), dims, Measure::Discord, von_neumann_entropy(rho),
                             von_neumann_entropy(reduced_state(rho, dims, Subsystem::B))};
  return evaluate(ctx, basis.unitary());
}

CorrelationResult one_way_deficit(const DensityMatrix& rho, BipartiteDims dims, const OptimizationSettings& settings) {
  return minimize_measure(rho, dims, settings, Measure::Deficit);
}

CorrelationResult quantum_discord(const DensityMatrix& rho, BipartiteDims dims, const OptimizationSettings& settings) {
  return minimize_measure(rho, dims, settings, Measure::Discord);
}

ZeroDiscordCheck zero_discord_separable_check(std::span<const SeparableTerm> terms, double tolerance) {
  ZeroDiscordCheck out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].xi_b.is_square()) throw DimensionError("zero_discord_separable_check: B component not square");
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      out.max_commutator_norm =
          std::max(out.max_commutator_norm, frobenius_norm(commutator(terms[i].xi_b, terms[j].xi_b)));
    }
  }
  out.zero_discord = out.max_commutator_norm < tolerance;
  return out;
}

}  // namespace qcorr
