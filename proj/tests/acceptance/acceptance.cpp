// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/correlation.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/teleportation.hpp"
#include "qcorr/theorem.hpp"

using namespace qcorr;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. Lemma 1 in both directions for qubits.
Verdict lemma1() {
  Verdict v;
  Rng rng = make_rng(1001);
  double worst_drop = 0.0;
  for (int c = 0; c < 200; ++c) {
    const KrausChannel ch = random_unital_channel(2, 1 + c % 4, rng);
    for (int s = 0; s < 50; ++s) {
      const DensityMatrix rho = random_density_matrix(2, rng);
      worst_drop = std::max(worst_drop, von_neumann_entropy(rho) - von_neumann_entropy(apply(ch, rho)));
    }
  }
  v.require(worst_drop <= 1e-9, "unital channel lowered entropy by " + fmt(worst_drop));

  double smallest_drop = 1.0;
  for (int c = 0; c < 200; ++c) {
    const KrausChannel ch = random_channel(2, 2, rng);
    v.require(!is_mixing(ch).mixing, "sampled non-unital channel is unital");
    smallest_drop = std::min(smallest_drop, 1.0 - von_neumann_entropy(apply(ch, DensityMatrix::maximally_mixed(2))));
  }
  v.require(smallest_drop > 1e-9, "non-unital channel kept S(I/2), drop " + fmt(smallest_drop));
  v.detail = v.pass ? "max unital drop " + fmt(worst_drop) + ", min non-unital drop " + fmt(smallest_drop) : v.detail;
  return v;
}

// 2. Case 1 / Case 2 channels never create correlation.
Verdict theorem1_forward() {
  Verdict v;
  std::vector<KrausChannel> channels;
  for (int k = 1; k <= 9; ++k) {
    channels.push_back(dephasing(0.1 * k));
    channels.push_back(depolarizing(0.1 * k));
  }
  channels.push_back(amplitude_damping(1.0));
  double worst = 0.0;
  std::uint64_t seed = 2000;
  for (const auto& ch : channels) {
    const Theorem1Report r = verify_theorem1(ch, 100, seed++);
    worst = std::max({worst, r.max_deficit, r.max_discord});
    v.require(r.channel_class.kind != ChannelKind::Neither, "channel classified Neither");
  }
  v.require(worst < 1e-6, "created correlation " + fmt(worst));
  if (v.pass) v.detail = std::to_string(channels.size()) + " channels x 100 states, max " + fmt(worst);
  return v;
}

// 3. Neither-class channels always have a witness.
Verdict theorem1_converse() {
  Verdict v;
  double weakest = 1.0;
  for (double p : {0.2, 0.5, 0.8}) {
    const Witness w = find_witness(amplitude_damping(p));
    weakest = std::min(weakest, w.discord);
    if (p == 0.5) {
      // Angle between the optimal measurement axis and the x axis on the Bloch sphere (projector relabeling allowed).
      const double cos_angle = std::sin(w.basis_params[0]) * std::cos(w.basis_params[1]);
      const double angle = std::acos(std::min(1.0, std::abs(cos_angle)));
      v.require(angle < 0.2, "p=0.5 witness basis is " + fmt(angle) + " rad from |+->");
    }
  }
  Rng rng = make_rng(3000);
  int found = 0;
  while (found < 50) {
    const KrausChannel ch = random_channel(2, 2, rng);
    if (structural_class(ch).kind != ChannelKind::Neither) continue;
    ++found;
    try {
      weakest = std::min(weakest, find_witness(ch).discord);
    } catch (const WitnessNotFound& e) {
      v.require(false, e.what());
    }
  }
  v.require(weakest > 1e-6, "witness discord " + fmt(weakest));
  if (v.pass) v.detail = "53 channels, min witness discord " + fmt(weakest);
  return v;
}

// 4. The qutrit mixing channel creates deficit.
Verdict qutrit() {
  Verdict v;
  const double r = 1.0 / std::sqrt(2.0);
  const QutritReport q = qutrit_counterexample(r, r);
  v.require(q.mixing.mixing, "channel is not mixing");
  v.require(q.coefficient > 0.0, "pattern coefficient not positive");
  v.require(q.shape_error < 1e-10, "pattern shape error " + fmt(q.shape_error));
  v.require(q.deficit.value > 1e-4, "deficit " + fmt(q.deficit.value));
  if (v.pass) v.detail = "coefficient " + fmt(q.coefficient) + ", deficit " + fmt(q.deficit.value);
  return v;
}

// 5. The Lindblad classicality condition.
Verdict lindblad() {
  Verdict v;
  Rng rng = make_rng(5000);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix g = ginibre(3, 3, rng);
    ComplexMatrix block = 0.5 * g * dagger(g);
    if (trial % 2 == 0) {
      for (auto& z : block.data()) z = z.real();
    }
    ComplexMatrix gamma(4, 4);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) gamma(a + 1, b + 1) = block(a, b);
    const LindbladGenerator gen(qcorr::testing::random_hermitian(2, rng), gamma);
    const bool fixed_point = frobenius_norm(lindblad_action(gen, ComplexMatrix::identity(2))) < 1e-9;
    if (preserves_classicality(gen).symmetric_gamma == fixed_point) ++agree;
  }
  v.require(agree == 100, "tests agree in " + std::to_string(agree) + "/100");

  const Complex i{0.0, 1.0};
  ComplexMatrix imaginary(4, 4);
  imaginary(1, 1) = imaginary(2, 2) = 0.25;
  imaginary(3, 3) = 0.1;
  imaginary(1, 2) = 0.1 * i;
  imaginary(2, 1) = -0.1 * i;
  ComplexMatrix symmetrized = imaginary;
  symmetrized(1, 2) = symmetrized(2, 1) = 0.0;

  Rng state_rng = make_rng(5001);
  const ClassicalQuantumEnsemble input = random_cq_ensemble({2, 2}, state_rng);
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.25 * k);
  double created = 0.0;
  for (const auto& p : discord_trajectory(LindbladGenerator(ComplexMatrix(2, 2), imaginary), input, times))
    created = std::max(created, p.discord);
  double kept = 0.0;
  for (const auto& p : discord_trajectory(LindbladGenerator(ComplexMatrix(2, 2), symmetrized), input, times))
    kept = std::max(kept, p.discord);
  v.require(created > 1e-5, "imaginary generator created only " + fmt(created));
  v.require(kept < 1e-6, "symmetrized generator created " + fmt(kept));
  if (v.pass) v.detail = "100/100 agree; created " + fmt(created) + " vs " + fmt(kept);
  return v;
}

// 6. Amplitude-damping trajectory rises then decays.
Verdict ad_trajectory() {
  Verdict v;
  const double rate = 1.0;
  std::vector<double> times;
  for (double t = 0.25; t <= 5.0; t += 0.25) times.push_back(t / rate);
  times.push_back(50.0 / rate);
  const auto traj = discord_trajectory(LindbladGenerator::amplitude_damping(rate), plus_minus_ensemble(0.7), times);
  double peak = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) peak = std::max(peak, traj[k].discord);
  const double tail = traj.back().discord;
  v.require(peak > 1e-3, "peak discord " + fmt(peak));
  v.require(tail < 1e-5, "discord at t=50/gamma " + fmt(tail));
  if (v.pass) v.detail = "peak " + fmt(peak) + ", at 50/gamma " + fmt(tail);
  return v;
}

// 7. Mixing channels never raise the singlet fraction.
Verdict msf() {
  Verdict v;
  Rng rng = make_rng(7000);
  double worst_gain = -1.0;
  double worst_dual = 0.0;
  for (int s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    for (int c = 0; c < 20; ++c) {
      const MsfComparison m = msf_after_channel(rho, random_unital_channel(2, 1 + c % 4, rng), 2);
      worst_gain = std::max(worst_gain, m.after - m.before);
      worst_dual = std::max(worst_dual, std::abs(m.after - m.after_dual));
    }
  }
  v.require(worst_gain <= 1e-7, "F increased by " + fmt(worst_gain));
  v.require(worst_dual <= 1e-8, "dual routes differ by " + fmt(worst_dual));

  ComplexVector phi(4, 0.0);
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  const double p = 0.5;
  const MsfComparison iso = msf_after_channel(DensityMatrix::pure(phi), depolarizing(p), 2);
  const double analytic = 1.0 - 0.75 * p;  // (1 - p) + p/4 for rho -> (1 - p) rho + p I/2
  v.require(std::abs(iso.after - analytic) < 1e-8, "isotropic F " + fmt(iso.after) + " vs " + fmt(analytic));
  if (v.pass) v.detail = "max gain " + fmt(worst_gain) + ", dual gap " + fmt(worst_dual) + ", isotropic F " + fmt(iso.after);
  return v;
}

// 8. Production optimizer against a 10x finer exhaustive grid.
Verdict optimizer_oracle() {
  Verdict v;
  using qcorr::testing::grid_oracle;
  using qcorr::testing::Measure;
  Rng rng = make_rng(8000);
  double worst = 0.0;
  double worst_order = -1.0;
  const OptimizationSettings settings;
  const int oracle_points = 10 * settings.grid_points_for(2);
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    const double deficit = one_way_deficit(rho, {2, 2}).value;
    const double discord = quantum_discord(rho, {2, 2}).value;
    worst = std::max(worst, std::abs(deficit - grid_oracle(rho, Measure::Deficit, oracle_points, 4).value));
    worst = std::max(worst, std::abs(discord - grid_oracle(rho, Measure::Discord, oracle_points, 4).value));
    worst_order = std::max(worst_order, discord - deficit);
  }
  v.require(worst < 1e-4, "optimizer differs from oracle by " + fmt(worst));
  v.require(worst_order <= 1e-6, "discord exceeds deficit by " + fmt(worst_order));
  if (v.pass) v.detail = "max |optimizer - oracle| " + fmt(worst);
  return v;
}

// 9. Fixed-seed CLI runs are byte-identical.
Verdict determinism() {
  Verdict v;
#ifdef QCORR_CLI_PATH
  const std::string cli = QCORR_CLI_PATH;
  const std::string data = QCORR_TEST_DATA;
  const std::vector<std::string> commands{
      "classify --channel " + data + "/ad_p05.json",
      "verify --channel " + data + "/ad_p05.json --states 10 --seed 42",
      "discord --state " + data + "/bell.json --dims 2 2",
      "demo-qutrit --e0 0.70710678 --e1 0.70710678",
      "evolve --gamma " + data + "/gamma_imag.json --times 0:5:6",
      "msf --state " + data + "/bell.json --channel " + data + "/dephasing_p03.json",
  };
  const auto read = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
  };
  int index = 0;
  for (const auto& command : commands) {
    std::string reference;
    for (int rep = 0; rep < 3; ++rep) {
      const std::string out = std::string(P_tmpdir) + "/qcorr_accept_" + std::to_string(index) + "_" +
                              std::to_string(rep);
      const int code = std::system((cli + " " + command + " --out " + out).c_str());
      v.require(code == 0, "exit status " + std::to_string(code) + " for: " + command);
      const std::string bytes = read(out);
      std::remove(out.c_str());
      v.require(!bytes.empty(), "empty report for: " + command);
      if (rep == 0) reference = bytes;
      v.require(bytes == reference, "output differs for: " + command);
    }
    ++index;
  }
  if (v.pass) v.detail = std::to_string(commands.size()) + " commands x 3 runs identical";
#else
  v.require(false, "CLI not built");
#endif
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 = no stated limit
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Lemma 1 both directions", 30.0, lemma1},
      {2, "Theorem 1 forward", 120.0, theorem1_forward},
      {3, "Theorem 1 converse", 0.0, theorem1_converse},
      {4, "Qutrit counterexample", 60.0, qutrit},
      {5, "Lindblad condition", 0.0, lindblad},
      {6, "Amplitude-damping trajectory", 0.0, ad_trajectory},
      {7, "MSF monotonicity", 0.0, msf},
      {8, "Optimizer oracle equivalence", 0.0, optimizer_oracle},
      {9, "Determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && seconds > c.limit_seconds) {
      v.pass = false;
      v.detail += " (runtime " + fmt(seconds) + " s over limit " + fmt(c.limit_seconds) + " s)";
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt(seconds) << " s): "
              << v.detail << std::endl;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
