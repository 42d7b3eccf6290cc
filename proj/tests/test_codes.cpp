// Copyright 2026 The qcav developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcav/codes.hpp"
#include "qcav/errors.hpp"
#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/rng.hpp"
#include "qcav/types.hpp"

using namespace qcav;
using namespace qcav::codes;
using hilbert::basis_state;
using noise::KrausFamily;
using noise::PairGammas;
using noise::Pauli;

namespace {

StateVector random_logical(int n_qubits, Rng& rng) {
  return {n_qubits, random_unit_vector(std::int64_t(1) << n_qubits, rng)};
}

StateVector corrupt(const StateVector& encoded, const KrausFamily& family,
                    const std::string& label) {
  int idx = family.index_of(label);
  REQUIRE(idx >= 0);
  Vector hit = family.ops[static_cast<std::size_t>(idx)].entries *
               encoded.amplitudes;
  REQUIRE(hit.norm() > 1e-12);
  return StateVector(encoded.n_qubits, Vector(hit / hit.norm()));
}

bool pairs_have_single_excitation(const StateVector& state) {
  int pairs = state.n_qubits / 2;
  for (std::int64_t i = 0; i < state.dim(); ++i) {
    if (std::abs(state.amplitudes(i)) <= 1e-14) continue;
    for (int l = 1; l <= pairs; ++l) {
      int b1 = static_cast<int>((i >> (state.n_qubits - (2 * l - 1))) & 1);
      int b2 = static_cast<int>((i >> (state.n_qubits - 2 * l)) & 1);
      if (b1 + b2 != 1) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cnot flips the target exactly when the control is set") {
  OperatorMatrix c12 = cnot(1, 2, 2);
  CHECK((c12.entries * basis_state(2, 0b00).amplitudes -
         basis_state(2, 0b00).amplitudes)
            .norm() == 0.0);
  CHECK((c12.entries * basis_state(2, 0b01).amplitudes -
         basis_state(2, 0b01).amplitudes)
            .norm() == 0.0);
  CHECK((c12.entries * basis_state(2, 0b10).amplitudes -
         basis_state(2, 0b11).amplitudes)
            .norm() == 0.0);
  CHECK((c12.entries * basis_state(2, 0b11).amplitudes -
         basis_state(2, 0b10).amplitudes)
            .norm() == 0.0);

  OperatorMatrix c21 = cnot(2, 1, 2);
  CHECK((c21.entries * basis_state(2, 0b01).amplitudes -
         basis_state(2, 0b11).amplitudes)
            .norm() == 0.0);

  CHECK(max_abs(Matrix(c12.entries * c12.entries -
                       Matrix::Identity(4, 4))) == 0.0);
  CHECK_THROWS_AS(cnot(2, 2, 3), std::invalid_argument);
}

TEST_CASE("apply_circuit agrees with the dense gate matrices") {
  Circuit circuit{3,
                  {{GateKind::cnot, 1, 3},
                   {GateKind::x, 0, 2},
                   {GateKind::cnot, 3, 2},
                   {GateKind::x, 0, 1},
                   {GateKind::cnot, 2, 1}}};
  Matrix dense = Matrix::Identity(8, 8);
  for (const Gate& g : circuit.gates) {
    Matrix step = g.kind == GateKind::cnot
                      ? cnot(g.control, g.target, 3).entries
                      : noise::sigma(Pauli::x, g.target, 3).entries;
    dense = step * dense;
  }
  Rng rng(71);
  for (int round = 0; round < 5; ++round) {
    StateVector psi = random_logical(3, rng);
    StateVector via_circuit = apply_circuit(circuit, psi);
    Vector via_dense = dense * psi.amplitudes;
    CHECK((via_circuit.amplitudes - via_dense).norm() <= 1e-14);
  }
  CHECK_THROWS_AS(apply_circuit(circuit, random_logical(2, rng)),
                  std::invalid_argument);
  Circuit bad{2, {{GateKind::cnot, 1, 1}}};
  CHECK_THROWS_AS(apply_circuit(bad, random_logical(2, rng)),
                  std::invalid_argument);
}

TEST_CASE("the four-qubit encoder produces the two code words") {
  StateVector zero = encode_four_qubit(1.0, 0.0);
  CHECK((zero.amplitudes - basis_state(4, 0b0101).amplitudes).norm() <= 1e-12);
  StateVector one = encode_four_qubit(0.0, 1.0);
  CHECK((one.amplitudes - basis_state(4, 0b1010).amplitudes).norm() <= 1e-12);

  Rng rng(72);
  for (int round = 0; round < 20; ++round) {
    Vector c = random_unit_vector(2, rng);
    StateVector enc = encode_four_qubit(c(0), c(1));
    Vector expected = c(0) * basis_state(4, 0b0101).amplitudes +
                      c(1) * basis_state(4, 0b1010).amplitudes;
    CHECK((enc.amplitudes - expected).norm() <= 1e-12);
    CHECK(std::abs(enc.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("the parity encoder lays out one excitation per pair") {
  Vector l11 = Vector::Zero(4);
  l11(0b11) = 1.0;
  StateVector e11 = encode_general_parity({2, l11});
  CHECK((e11.amplitudes - basis_state(6, 0b101001).amplitudes).norm() <=
        1e-12);

  Vector l10 = Vector::Zero(4);
  l10(0b10) = 1.0;
  StateVector e10 = encode_general_parity({2, l10});
  CHECK((e10.amplitudes - basis_state(6, 0b100110).amplitudes).norm() <=
        1e-12);

  Rng rng(73);
  // One logical qubit: same code as the four-qubit encoder.
  Vector c = random_unit_vector(2, rng);
  StateVector via_parity = encode_general_parity({1, c});
  StateVector via_four = encode_four_qubit(c(0), c(1));
  CHECK((via_parity.amplitudes - via_four.amplitudes).norm() <= 1e-12);

  for (int l = 1; l <= 3; ++l) {
    StateVector logical = random_logical(l, rng);
    StateVector enc = encode_general_parity(logical);
    CHECK(enc.n_qubits == 2 * l + 2);
    CHECK(std::abs(enc.norm() - 1.0) <= 1e-12);
    CHECK(pairs_have_single_excitation(enc));
    // Pair-symmetric z noise cancels on every pair.
    KrausFamily z_only = noise::build_pairwise_model(
        l + 1, {PairGammas{0.0, 0.0, 0.3}});
    for (const auto& op : z_only.ops) {
      CHECK((op.entries * enc.amplitudes).norm() <= 1e-12);
    }
  }
  CHECK_THROWS_AS(encode_general_parity(random_logical(6, rng)),
                  resource_limit_error);
}

TEST_CASE("decoders invert the encoders and reject leaked states") {
  Rng rng(74);
  Vector c = random_unit_vector(2, rng);
  StateVector dec = decode_four_qubit(encode_four_qubit(c(0), c(1)));
  CHECK((dec.amplitudes - c).norm() <= 1e-10);

  for (int l = 1; l <= 3; ++l) {
    StateVector logical = random_logical(l, rng);
    StateVector round = decode_general_parity(encode_general_parity(logical));
    CHECK((round.amplitudes - logical.amplitudes).norm() <= 1e-10);
  }

  StateVector corr = decode_correlated(encode_correlated(c(0), c(1)));
  CHECK((corr.amplitudes - c).norm() <= 1e-10);

  CHECK_THROWS_AS(decode_four_qubit(basis_state(4, 0b0011)), decode_error);
  CHECK_THROWS_AS(decode_general_parity(basis_state(6, 0)), decode_error);
  CHECK_THROWS_AS(decode_general_parity(basis_state(3, 0)),
                  std::invalid_argument);
}

TEST_CASE("code spaces list the logical basis in order") {
  Subspace four = four_qubit_code_space();
  CHECK(oracle::overlap_mag(four.basis_vector(0), encode_four_qubit(1.0, 0.0)) ==
        doctest::Approx(1.0));
  CHECK(oracle::overlap_mag(four.basis_vector(1), encode_four_qubit(0.0, 1.0)) ==
        doctest::Approx(1.0));

  Subspace parity = general_parity_code_space(2);
  CHECK(parity.dim() == 4);
  for (std::int64_t k = 0; k < 4; ++k) {
    Vector e = Vector::Zero(4);
    e(k) = 1.0;
    StateVector enc = encode_general_parity({2, e});
    CHECK((parity.basis().col(k) - enc.amplitudes).norm() <= 1e-12);
  }

  Subspace corr = correlated_code_space();
  CHECK(corr.contains(basis_state(2, 0b00)));
  CHECK(corr.contains(basis_state(2, 0b11)));
  CHECK(!corr.contains(basis_state(2, 0b01)));
}

TEST_CASE("syndrome measurement is quiet on code states") {
  Rng rng(75);
  Vector c = random_unit_vector(2, rng);
  StateVector enc = encode_four_qubit(c(0), c(1));
  Syndrome s = measure_syndrome(enc, 2, 99);
  CHECK(s.outcomes == std::vector<int>{0, 0});
  CHECK((s.post_state.amplitudes - enc.amplitudes).norm() <= 1e-12);

  StateVector enc3 = encode_general_parity(random_logical(3, rng));
  Syndrome s3 = measure_syndrome(enc3, 4, 99);
  CHECK(s3.outcomes == std::vector<int>{0, 0, 0, 0});
  CHECK((s3.post_state.amplitudes - enc3.amplitudes).norm() <= 1e-12);
}

TEST_CASE("syndrome measurement pinpoints raised and lowered pairs") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  Rng rng(76);
  Vector c = random_unit_vector(2, rng);
  StateVector enc = encode_four_qubit(c(0), c(1));

  StateVector up1 = corrupt(enc, errors, "A1+");
  Syndrome s_up = measure_syndrome(up1, 2, 5);
  CHECK(s_up.outcomes == std::vector<int>{2, 0});
  CHECK((s_up.post_state.amplitudes - up1.amplitudes).norm() <= 1e-12);

  StateVector down2 = corrupt(enc, errors, "A2-");
  Syndrome s_down = measure_syndrome(down2, 2, 5);
  CHECK(s_down.outcomes == std::vector<int>{0, -2});

  KrausFamily errors3 =
      noise::build_pairwise_model(3, {PairGammas{0.1, 0.1, 0.1}});
  StateVector enc2 = encode_general_parity(random_logical(2, rng));
  StateVector up2 = corrupt(enc2, errors3, "A2+");
  Syndrome s_mid = measure_syndrome(up2, 3, 5);
  CHECK(s_mid.outcomes == std::vector<int>{0, 2, 0});
}

TEST_CASE("syndrome sampling is reproducible for a fixed seed") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  StateVector enc = encode_four_qubit(1.0, 0.0);
  StateVector hit = corrupt(enc, errors, "A1+");
  Vector mixed_amps =
      (enc.amplitudes + hit.amplitudes) / std::sqrt(2.0);
  StateVector mixed(4, Vector(mixed_amps / mixed_amps.norm()));

  Syndrome first = measure_syndrome(mixed, 2, 2026);
  Syndrome second = measure_syndrome(mixed, 2, 2026);
  CHECK(first.outcomes == second.outcomes);
  CHECK((first.post_state.amplitudes - second.post_state.amplitudes).norm() ==
        0.0);

  CHECK_THROWS_AS(measure_syndrome(StateVector(2, Vector::Zero(4)), 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_syndrome(enc, 3, 1), std::invalid_argument);
}

TEST_CASE("four-qubit recovery uses the intact pair as the reference") {
  Circuit up1 = recovery_circuit({+2, 0}, 2, RecoveryScheme::four_qubit);
  REQUIRE(up1.gates.size() == 2);
  CHECK(up1.gates[0].control == 4);
  CHECK(up1.gates[0].target == 1);
  CHECK(up1.gates[1].control == 3);
  CHECK(up1.gates[1].target == 2);

  Circuit down2 = recovery_circuit({0, -2}, 2, RecoveryScheme::four_qubit);
  REQUIRE(down2.gates.size() == 2);
  CHECK(down2.gates[0].control == 1);
  CHECK(down2.gates[0].target == 3);
  CHECK(down2.gates[1].control == 2);
  CHECK(down2.gates[1].target == 4);

  CHECK(recovery_circuit({0, 0}, 2, RecoveryScheme::four_qubit).gates.empty());
  CHECK_THROWS_AS(recovery_circuit({+2, -2}, 2, RecoveryScheme::four_qubit),
                  uncorrectable_syndrome_error);
  CHECK_THROWS_AS(recovery_circuit({+2}, 2, RecoveryScheme::four_qubit),
                  std::invalid_argument);
  CHECK_THROWS_AS(recovery_circuit({3, 0}, 2, RecoveryScheme::four_qubit),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      recovery_circuit({0, 0, +2}, 3, RecoveryScheme::four_qubit),
      std::invalid_argument);
}

TEST_CASE("recovery returns every single-pair error to the code words") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  Rng rng(77);
  Vector c = random_unit_vector(2, rng);
  StateVector enc = encode_four_qubit(c(0), c(1));
  for (const std::string& label : {"A1+", "A1-", "A2+", "A2-"}) {
    StateVector hit = corrupt(enc, errors, label);
    Syndrome s = measure_syndrome(hit, 2, 3);
    Circuit fix = recovery_circuit(s.outcomes, 2, RecoveryScheme::four_qubit);
    StateVector recovered = apply_circuit(fix, s.post_state);
    CHECK(oracle::overlap_mag(recovered, enc) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  for (int l = 2; l <= 3; ++l) {
    int pairs = l + 1;
    KrausFamily model =
        noise::build_pairwise_model(pairs, {PairGammas{0.1, 0.1, 0.1}});
    StateVector logical = random_logical(l, rng);
    StateVector encoded = encode_general_parity(logical);
    for (int p = 1; p <= pairs; ++p) {
      for (const char* sign : {"+", "-"}) {
        std::string label = "A" + std::to_string(p) + sign;
        StateVector hit = corrupt(encoded, model, label);
        Syndrome s = measure_syndrome(hit, pairs, 3);
        Circuit fix =
            recovery_circuit(s.outcomes, pairs, RecoveryScheme::general_parity);
        StateVector recovered = apply_circuit(fix, s.post_state);
        CHECK(oracle::overlap_mag(recovered, encoded) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("round trips recover raising and lowering errors") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  Rng rng(78);
  StateVector input = random_logical(1, rng);

  RoundTripReport up =
      roundtrip_inject(input, errors, "A1+", RecoveryScheme::four_qubit, 11);
  CHECK(up.injected_label == "A1+");
  CHECK(up.syndrome == std::vector<int>{2, 0});
  CHECK(up.fidelity >= 1.0 - 1e-10);
  CHECK(up.correctable);
  CHECK(!up.zero_amplitude);
  CHECK(!up.recovery.gates.empty());

  RoundTripReport down =
      roundtrip_inject(input, errors, "A2-", RecoveryScheme::four_qubit, 11);
  CHECK(down.syndrome == std::vector<int>{0, -2});
  CHECK(down.fidelity >= 1.0 - 1e-10);

  KrausFamily errors3 =
      noise::build_pairwise_model(3, {PairGammas{0.1, 0.1, 0.1}});
  RoundTripReport mid = roundtrip_inject(random_logical(2, rng), errors3,
                                         "A3-", RecoveryScheme::general_parity,
                                         11);
  CHECK(mid.syndrome == std::vector<int>{0, 0, -2});
  CHECK(mid.fidelity >= 1.0 - 1e-10);
}

TEST_CASE("round trips report vanishing branches and uncorrectable hits") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  Rng rng(79);
  StateVector input = random_logical(1, rng);

  // Pair-symmetric z terms annihilate every code state.
  RoundTripReport quiet =
      roundtrip_inject(input, errors, "A1z", RecoveryScheme::four_qubit, 11);
  CHECK(quiet.zero_amplitude);
  CHECK(quiet.fidelity == 1.0);
  CHECK(quiet.syndrome == std::vector<int>{0, 0});
  CHECK(quiet.recovery.gates.empty());

  // An operator raising both pairs defeats single-error recovery.
  KrausFamily two_pair(
      4,
      {noise::pauli_product(Complex(1.0, 0.0),
                            {{Pauli::plus, 1}, {Pauli::plus, 3}}, 4)},
      {"both"});
  RoundTripReport lost = roundtrip_inject(basis_state(1, 0), two_pair, "both",
                                          RecoveryScheme::four_qubit, 11);
  CHECK(!lost.correctable);
  CHECK(lost.syndrome == std::vector<int>{2, 2});
  CHECK(lost.fidelity <= 1e-12);

  CHECK_THROWS_AS(
      roundtrip_inject(input, errors, "A9+", RecoveryScheme::four_qubit, 11),
      std::invalid_argument);
}

TEST_CASE("the enumeration oracle matches the closed-form mean") {
  const double g = 0.1;
  KrausFamily family = noise::complete_family(
      noise::build_pairwise_model(2, {PairGammas{g, g, g}}));
  double enumerated = oracle::exact_roundtrip_mean(
      encode_four_qubit(1.0, 0.0), family, RecoveryScheme::four_qubit);
  const double s8 = std::sqrt(1.0 - 8.0 * g * g);
  const double s4 = std::sqrt(1.0 - 4.0 * g * g);
  const double closed = std::pow((s8 + 2.0 * s4 + 1.0) / 4.0, 2) + 4.0 * g * g;
  CHECK(std::abs(enumerated - closed) <= 1e-12);
}

TEST_CASE("Monte Carlo round trips are reproducible and track the oracle") {
  KrausFamily family = noise::complete_family(
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}}));
  StateVector input = basis_state(1, 0);

  MonteCarloReport first = roundtrip_monte_carlo(
      input, family, RecoveryScheme::four_qubit, 2000, 7);
  MonteCarloReport second = roundtrip_monte_carlo(
      input, family, RecoveryScheme::four_qubit, 2000, 7);
  CHECK(first.mean_fidelity == second.mean_fidelity);
  CHECK(first.std_error == second.std_error);
  REQUIRE(first.per_operator.size() == second.per_operator.size());
  for (std::size_t k = 0; k < first.per_operator.size(); ++k) {
    CHECK(first.per_operator[k].count == second.per_operator[k].count);
  }

  std::int64_t total = 0;
  for (const auto& op : first.per_operator) {
    total += op.count;
    if (op.label == "A1z" || op.label == "A2z") CHECK(op.count == 0);
  }
  CHECK(total == 2000);
  std::int64_t syndrome_total = 0;
  for (const auto& s : first.per_syndrome) syndrome_total += s.count;
  CHECK(syndrome_total == 2000);
  CHECK(first.uncorrectable_count == 0);

  double exact = oracle::exact_roundtrip_mean(encode_four_qubit(1.0, 0.0),
                                              family,
                                              RecoveryScheme::four_qubit);
  CHECK(std::abs(first.mean_fidelity - exact) <=
        5.0 * first.std_error + 1e-12);
}

TEST_CASE("Monte Carlo validates its inputs") {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  KrausFamily family = noise::complete_family(errors);
  StateVector input = basis_state(1, 0);
  CHECK_THROWS_AS(roundtrip_monte_carlo(input, family,
                                        RecoveryScheme::four_qubit, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(roundtrip_monte_carlo(input, errors,
                                        RecoveryScheme::four_qubit, 10, 1),
                  incomplete_family_error);
  CHECK_THROWS_AS(roundtrip_monte_carlo(basis_state(2, 0), family,
                                        RecoveryScheme::four_qubit, 10, 1),
                  std::invalid_argument);
}
