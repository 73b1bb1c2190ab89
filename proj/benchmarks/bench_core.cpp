#include <benchmark/benchmark.h>

#include <cmath>

#include "qcorr/correlation.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/random.hpp"
#include "qcorr/teleportation.hpp"
#include "qcorr/theorem.hpp"

using namespace qcorr;

static void BM_HermitianEigh(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(1);
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix h = 0.5 * (g + dagger(g));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigh(h));
}
BENCHMARK(BM_HermitianEigh)->Arg(2)->Arg(4)->Arg(9)->Arg(16);

static void BM_MatrixExp(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(2);
  const ComplexMatrix m = ginibre(d, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(m));
}
BENCHMARK(BM_MatrixExp)->Arg(4)->Arg(16);

static void BM_Propagator(benchmark::State& state) {
  const LindbladGenerator g = LindbladGenerator::amplitude_damping(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagator(g, 3.0));
}
BENCHMARK(BM_Propagator);

static void BM_QubitDiscord(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_discord(rho, {2, 2}));
}
BENCHMARK(BM_QubitDiscord)->Unit(benchmark::kMillisecond);

static void BM_QubitDeficit(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(one_way_deficit(rho, {2, 2}));
}
BENCHMARK(BM_QubitDeficit)->Unit(benchmark::kMillisecond);

static void BM_QutritDeficit(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(9, 5);
  for (auto _ : state) benchmark::DoNotOptimize(one_way_deficit(rho, {3, 3}));
}
BENCHMARK(BM_QutritDeficit)->Unit(benchmark::kMillisecond);

static void BM_SingletFraction(benchmark::State& state) {
  const DensityMatrix rho = random_density_matrix(4, 6);
  for (auto _ : state) benchmark::DoNotOptimize(max_singlet_fraction(rho, 2));
}
BENCHMARK(BM_SingletFraction)->Unit(benchmark::kMillisecond);

static void BM_FindWitness(benchmark::State& state) {
  const KrausChannel ch = amplitude_damping(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(find_witness(ch));
}
BENCHMARK(BM_FindWitness)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
