#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/errors.hpp"

using namespace qcorr;
using qcorr::testing::max_abs_diff;

namespace {

ComplexMatrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{r, r}, {r, -r}};
}

KrausChannel completely_dephasing() {
  return KrausChannel({projector(basis_ket(2, 0)), projector(basis_ket(2, 1))});
}

}  // namespace

TEST_CASE("KrausChannel validation") {
  CHECK_THROWS_AS(KrausChannel({}), DimensionError);
  CHECK_THROWS_AS(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), DimensionError);
  CHECK_THROWS_AS(KrausChannel({0.5 * ComplexMatrix::identity(2)}), ValidationError);
  CHECK_THROWS_AS(amplitude_damping(1.5), ValidationError);
  CHECK_THROWS_AS(dephasing(-0.1), ValidationError);
  CHECK_THROWS_AS(qutrit_paper_channel(0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(identity_channel(2)(ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("apply examples") {
  Rng rng = make_rng(21);
  const DensityMatrix rho = random_density_matrix(2, rng);
  CHECK(max_abs_diff(apply(identity_channel(2), rho).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(apply(amplitude_damping(1.0), rho).matrix(), projector(basis_ket(2, 0))) < 1e-15);
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    const double expected[] = {(1 + p) / 2, (1 - p) / 2};
    CHECK(max_abs_diff(apply(amplitude_damping(p), DensityMatrix::maximally_mixed(2)).matrix(),
                       ComplexMatrix::diagonal(expected)) < 1e-15);
  }
}

TEST_CASE("apply preserves trace and Hermiticity") {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel ch = random_channel(3, 2, rng);
    const DensityMatrix rho = random_density_matrix(3, rng);
    const ComplexMatrix out = ch(rho.matrix());
    CHECK(std::abs(out.trace() - 1.0) < 1e-10);
    CHECK(hermiticity_defect(out) < 1e-10);
  }
}

TEST_CASE("is_mixing examples") {
  CHECK(is_mixing(dephasing(0.3)).mixing);
  const MixingTest ad = is_mixing(amplitude_damping(0.5));
  CHECK_FALSE(ad.mixing);
  CHECK(ad.defect == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  const double expected[] = {1.5, 0.5};
  CHECK(max_abs_diff(unitality_operator(amplitude_damping(0.5)), ComplexMatrix::diagonal(expected)) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(is_mixing(qutrit_paper_channel(r, r)).mixing);
}

TEST_CASE("is_completely_decohering examples") {
  const DecoherenceTest deph = is_completely_decohering(completely_dephasing());
  CHECK(deph.decohering);
  REQUIRE(deph.basis);
  // Basis equals I up to column phases and ordering: every entry has modulus 0 or 1 on the diagonal pattern.
  const ComplexMatrix b = *deph.basis;
  CHECK(std::abs(std::abs(b(0, 0)) + std::abs(b(0, 1)) - 1.0) < 1e-10);
  CHECK(std::abs(b(0, 0) * b(0, 1)) < 1e-10);

  CHECK(is_completely_decohering(amplitude_damping(1.0)).decohering);
  const DecoherenceTest ad = is_completely_decohering(amplitude_damping(0.5));
  CHECK_FALSE(ad.decohering);
  CHECK(ad.defect > 0.1);
}

TEST_CASE("decohering basis diagonalizes every output") {
  // Completely dephasing in the Hadamard basis, followed by a non-unital flip.
  const ComplexMatrix h = hadamard();
  const KrausChannel rotated({h * projector(basis_ket(2, 0)) * h, h * projector(basis_ket(2, 1)) * h});
  const DecoherenceTest test = is_completely_decohering(rotated);
  REQUIRE(test.decohering);
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix out = dagger(*test.basis) * rotated(random_density_matrix(2, rng).matrix()) * *test.basis;
    CHECK(std::abs(out(0, 1)) < 1e-10);
  }
  // Qutrit completely dephasing channel in a random basis.
  const ComplexMatrix u = haar_unitary(3, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < 3; ++i) kraus.push_back(u * projector(basis_ket(3, i)) * dagger(u));
  const DecoherenceTest q = is_completely_decohering(KrausChannel(kraus));
  REQUIRE(q.decohering);
  const ComplexMatrix out = dagger(*q.basis) * KrausChannel(kraus)(random_density_matrix(3, rng).matrix()) * *q.basis;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(out(i, j)) < 1e-9);
}

TEST_CASE("structural classes") {
  CHECK(structural_class(dephasing(0.3)).kind == ChannelKind::MixingOnly);
  CHECK(structural_class(amplitude_damping(1.0)).kind == ChannelKind::CompletelyDecoheringOnly);
  CHECK(structural_class(completely_dephasing()).kind == ChannelKind::Both);
  CHECK(structural_class(amplitude_damping(0.5)).kind == ChannelKind::Neither);
  CHECK(to_string(ChannelKind::Neither) == "Neither");
}

TEST_CASE("extend_on_b") {
  Rng rng = make_rng(24);
  CHECK(same_action(extend_on_b(identity_channel(2), 3), identity_channel(6)));
  const KrausChannel ch = random_channel(2, 3, rng);
  const KrausChannel ext = extend_on_b(ch, 2);
  CHECK(ext.dim() == 4);  // construction re-validates trace preservation
  const DensityMatrix ra = random_density_matrix(2, rng);
  const DensityMatrix rb = random_density_matrix(2, rng);
  const ComplexMatrix product = tensor_product(ra.matrix(), rb.matrix());
  const ComplexMatrix expected = tensor_product(ra.matrix(), ch(rb.matrix()));
  CHECK(max_abs_diff(ext(product), expected) < 1e-14);
  CHECK(max_abs_diff(apply_on_b(ch, product, 2), expected) < 1e-14);
  const DensityMatrix rab = random_density_matrix(4, rng);
  CHECK(max_abs_diff(apply_on_b(ch, rab, 2).matrix(), ext(rab.matrix())) < 1e-14);
}

TEST_CASE("conjugate_channel") {
  Rng rng = make_rng(25);
  const ComplexMatrix u = haar_unitary(2, rng);
  CHECK(same_action(conjugate_channel(unitary_channel(u)), unitary_channel(dagger(u))));
  const KrausChannel pauli_channel = depolarizing(0.4);
  CHECK(same_action(conjugate_channel(pauli_channel), pauli_channel));
  const KrausChannel mix = random_unital_channel(3, 3, rng);
  CHECK(same_action(conjugate_channel(conjugate_channel(mix)), mix));
  CHECK(is_mixing(conjugate_channel(mix)).mixing);
  CHECK_THROWS_AS(conjugate_channel(amplitude_damping(0.5)), ValidationError);
}

TEST_CASE("constructors") {
  CHECK(same_action(amplitude_damping(0.0), identity_channel(2)));
  const ComplexMatrix m = qutrit_mixing_unitary();
  CHECK(unitarity_defect(m) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  const KrausChannel q = qutrit_paper_channel(r, r);
  CHECK(max_abs_diff(q.kraus()[0], r * ComplexMatrix::identity(3)) < 1e-15);
  CHECK(std::abs(q.kraus()[1](0, 2) - Complex{r * r}) < 1e-15);
  CHECK(std::abs(q.kraus()[1](1, 2) - Complex{-r * r}) < 1e-15);

  // Depolarizing convention: rho -> (1 - p) rho + p I/2.
  Rng rng = make_rng(26);
  const DensityMatrix rho = random_density_matrix(2, rng);
  const ComplexMatrix expected = 0.5 * rho.matrix() + 0.25 * ComplexMatrix::identity(2);
  CHECK(max_abs_diff(depolarizing(0.5)(rho.matrix()), expected) < 1e-15);

  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> w = dirichlet_uniform(3, rng);
    const std::vector<ComplexMatrix> us{haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)};
    CHECK(is_mixing(mixture_of_unitaries(w, us)).mixing);
  }
  const double bad_w[] = {0.5, 0.4};
  const std::vector<ComplexMatrix> two{ComplexMatrix::identity(2), pauli::x()};
  CHECK_THROWS_AS(mixture_of_unitaries(bad_w, two), ValidationError);
}

TEST_CASE("random channel samplers") {
  Rng rng = make_rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausChannel ch = random_channel(2, 4, rng);
    CHECK(ch.kraus().size() == 4);
    CHECK(is_mixing(random_unital_channel(2, 3, rng)).mixing);
    const KrausChannel unitary = random_channel(3, 1, rng);
    REQUIRE(unitary.kraus().size() == 1);
    CHECK(unitarity_defect(unitary.kraus()[0]) < 1e-10);
  }
  Rng a = make_rng(5), b = make_rng(5);
  CHECK(random_channel(2, 2, a).kraus() == random_channel(2, 2, b).kraus());
}

TEST_CASE("Lemma 1 forward: unital qubit channels never lower entropy") {
  Rng rng = make_rng(28);
  for (int c = 0; c < 200; ++c) {
    const KrausChannel ch = random_unital_channel(2, 1 + c % 4, rng);
    for (int s = 0; s < 50; ++s) {
      const DensityMatrix rho = random_density_matrix(2, rng);
      CHECK(von_neumann_entropy(apply(ch, rho)) >= von_neumann_entropy(rho) - 1e-9);
    }
  }
}

TEST_CASE("Lemma 1 converse: non-unital qubit channels lower the entropy of I/2") {
  Rng rng = make_rng(29);
  int tested = 0;
  while (tested < 200) {
    const KrausChannel ch = random_channel(2, 2, rng);
    if (is_mixing(ch).defect <= 1e-3) continue;
    ++tested;
    CHECK(von_neumann_entropy(apply(ch, DensityMatrix::maximally_mixed(2))) < 1.0 - 1e-9);
  }
}

TEST_CASE("mixing channels on B never lower the joint entropy") {
  Rng rng = make_rng(30);
  for (int trial = 0; trial < 100; ++trial) {
    const KrausChannel ch = random_unital_channel(2, 3, rng);
    const DensityMatrix rab = random_density_matrix(4, rng);
    CHECK(von_neumann_entropy(apply_on_b(ch, rab, 2)) >= von_neumann_entropy(rab) - 1e-9);
  }
}
