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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/types.hpp"

namespace qcav::codes {

enum class GateKind { cnot, x };

// One gate: x acts on `target`; cnot flips `target` when `control` is 1.
// Qubits are 1-based.
struct Gate {
  GateKind kind;
  int control = 0;  // unused for x
  int target = 0;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;  // applied left to right
};

// Applies the circuit by basis-index bit manipulation (exact, no matrix
// build).
StateVector apply_circuit(const Circuit& circuit, const StateVector& psi);

// Dense CNOT on an n-qubit register (for algebraic checks; simulation
// goes through apply_circuit).
OperatorMatrix cnot(int control, int target, int n_qubits);

// Four-qubit encoder for one logical qubit protected against pairwise-
// collective noise on pairs (1,2) and (1',2') laid out as qubits
// (1,1',2,2') = (1,2,3,4):
//   c0|0> + c1|1>  ->  c0|0101> + c1|1010>.
// Implemented as CNOTs from qubit 1 onto 4, 3, 2 applied to
// (c0|0>+c1|1>) tensor |101>.
StateVector encode_four_qubit(Complex c0, Complex c1);

// Inverse of encode_four_qubit.  The state must lie in the code space
// to within 1e-8 (relative residual), else decode_error.
StateVector decode_four_qubit(const StateVector& encoded);

// Parity-pair encoder for L logical qubits on 2L+2 physical qubits:
// logical |i_1..i_L> maps to pairs (i_l, 1-i_l) for l = 1..L followed
// by a parity pair (p, 1-p), p = i_1 xor ... xor i_L.  Each pair holds
// one |01> or |10>, so pair-symmetric z noise cancels and a flipped
// pair is detectable.
StateVector encode_general_parity(const StateVector& logical);

// Inverse of encode_general_parity (L recovered from the register
// width); residual gate as in decode_four_qubit.
StateVector decode_general_parity(const StateVector& encoded);

// Two-qubit repetition encoder c0|00> + c1|11>, immune to correlated
// exchange noise.
StateVector encode_correlated(Complex c0, Complex c1);
StateVector decode_correlated(const StateVector& encoded);

// Code space of each encoder as a Subspace (logical basis order).
Subspace four_qubit_code_space();
Subspace general_parity_code_space(int logical_qubits);
Subspace correlated_code_space();

// Result of projectively measuring every pair parity sigma_(2l-1)^z +
// sigma_(2l)^z without disturbing code states.  Outcomes are reported
// error-aligned: +2 flags a pair raised to |11>, -2 a pair lowered to
// |00>, 0 an intact pair.
struct Syndrome {
  std::vector<int> outcomes;  // one of {-2, 0, +2} per pair
  StateVector post_state;     // normalized post-measurement state
};

// Projective pair-parity measurement over `pairs` pairs (register width
// must be 2*pairs).  Outcome sampling uses the given seed; states with
// definite parities (the usual case after a single error) are
// deterministic.
Syndrome measure_syndrome(const StateVector& state, int pairs,
                          std::uint64_t seed);

enum class RecoveryScheme { four_qubit, general_parity };

// CNOT/X recovery circuit for a syndrome with at most one nonzero
// outcome.  Throws uncorrectable_syndrome_error when two or more pairs
// are flagged.  The returned circuit maps the flagged-pair state back
// into the code space for any encoded input.
Circuit recovery_circuit(const std::vector<int>& outcomes, int pairs,
                         RecoveryScheme scheme);

// One inject-measure-recover-decode cycle.
struct RoundTripReport {
  std::string injected_label;
  std::vector<int> syndrome;
  Circuit recovery;
  double fidelity = 0.0;     // |<input|decoded>|^2
  bool correctable = true;   // false when the syndrome was uncorrectable
  bool zero_amplitude = false;  // injected operator annihilated the state
};

// Encodes `input` (1 logical qubit for four_qubit/correlated-style
// codes, L for general_parity), applies the family operator with the
// given label (normalized), measures the syndrome, applies recovery and
// reports the decoded fidelity.  A label whose operator annihilates the
// encoded state yields fidelity 1 with zero_amplitude set.
RoundTripReport roundtrip_inject(const StateVector& input,
                                 const noise::KrausFamily& family,
                                 const std::string& label,
                                 RecoveryScheme scheme, std::uint64_t seed);

// Monte Carlo statistics of the full channel followed by syndrome
// recovery.
struct OutcomeStats {
  std::string label;       // Kraus operator sampled
  std::int64_t count = 0;
  double mean_fidelity = 0.0;
};

struct SyndromeStats {
  std::vector<int> outcomes;
  std::int64_t count = 0;
};

struct MonteCarloReport {
  int trials = 0;
  std::uint64_t seed = 0;
  double mean_fidelity = 0.0;
  double std_error = 0.0;    // sample standard error of the mean
  std::vector<OutcomeStats> per_operator;
  std::vector<SyndromeStats> per_syndrome;
  std::int64_t uncorrectable_count = 0;
};

// Samples `trials` channel applications (Kraus operator a with
// probability |A_a psi|^2), runs measure-recover-decode on each, and
// aggregates fidelity statistics.  The family must be complete to 1e-8.
// Trial t draws from the sub-stream t of the seed, so results are
// reproducible for fixed (seed, trials).
MonteCarloReport roundtrip_monte_carlo(const StateVector& input,
                                       const noise::KrausFamily& family,
                                       RecoveryScheme scheme, int trials,
                                       std::uint64_t seed);

}  // namespace qcav::codes
