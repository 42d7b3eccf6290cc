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

#include "qcav/codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qcav/errors.hpp"
#include "qcav/rng.hpp"

namespace qcav::codes {
namespace {

std::int64_t qubit_mask(int qubit, int n_qubits) {
  return std::int64_t{1} << (n_qubits - qubit);
}

void check_qubit(int qubit, int n_qubits) {
  if (qubit < 1 || qubit > n_qubits) {
    throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                " out of range 1.." + std::to_string(n_qubits));
  }
}

// Residual-gated projection onto a code space: returns logical
// amplitudes, throws decode_error when the state leaks out of the code.
StateVector project_decode(const StateVector& encoded, const Subspace& code,
                           int logical_qubits) {
  if (encoded.n_qubits != code.n_qubits()) {
    throw std::invalid_argument("decoder register mismatch");
  }
  Vector logical = code.basis().adjoint() * encoded.amplitudes;
  double residual = (encoded.amplitudes - code.basis() * logical).norm();
  if (residual > 1e-8 * std::max(1.0, encoded.norm())) {
    throw decode_error("state lies outside the code space (residual " +
                           std::to_string(residual) + ")",
                       residual);
  }
  return {logical_qubits, std::move(logical)};
}

// Unchecked projection used internally by the round trip, which must
// report a fidelity honestly even for states that leaked.
Vector project_logical(const StateVector& encoded, const Subspace& code) {
  return code.basis().adjoint() * encoded.amplitudes;
}

}  // namespace

StateVector apply_circuit(const Circuit& circuit, const StateVector& psi) {
  if (circuit.n_qubits != psi.n_qubits) {
    throw std::invalid_argument("circuit register does not match state");
  }
  Vector amps = psi.amplitudes;
  std::int64_t dim = amps.size();
  for (const Gate& gate : circuit.gates) {
    check_qubit(gate.target, circuit.n_qubits);
    std::int64_t tmask = qubit_mask(gate.target, circuit.n_qubits);
    Vector next(dim);
    if (gate.kind == GateKind::x) {
      for (std::int64_t i = 0; i < dim; ++i) next(i ^ tmask) = amps(i);
    } else {
      check_qubit(gate.control, circuit.n_qubits);
      if (gate.control == gate.target) {
        throw std::invalid_argument("cnot control equals target");
      }
      std::int64_t cmask = qubit_mask(gate.control, circuit.n_qubits);
      for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t j = (i & cmask) ? (i ^ tmask) : i;
        next(j) = amps(i);
      }
    }
    amps = std::move(next);
  }
  return {psi.n_qubits, std::move(amps)};
}

OperatorMatrix cnot(int control, int target, int n_qubits) {
  std::int64_t dim = checked_dimension(n_qubits);
  check_qubit(control, n_qubits);
  check_qubit(target, n_qubits);
  if (control == target) throw std::invalid_argument("cnot control equals target");
  std::int64_t cmask = qubit_mask(control, n_qubits);
  std::int64_t tmask = qubit_mask(target, n_qubits);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    std::int64_t j = (i & cmask) ? (i ^ tmask) : i;
    m(j, i) = 1.0;
  }
  return {n_qubits, std::move(m)};
}

StateVector encode_four_qubit(Complex c0, Complex c1) {
  // (c0|0> + c1|1>) tensor |101>, then copy qubit 1 onto 4, 3, 2.
  Vector start = Vector::Zero(16);
  start(0b0101) = c0;
  start(0b1101) = c1;
  Circuit circuit{4, {{GateKind::cnot, 1, 4},
                      {GateKind::cnot, 1, 3},
                      {GateKind::cnot, 1, 2}}};
  return apply_circuit(circuit, StateVector(4, std::move(start)));
}

StateVector decode_four_qubit(const StateVector& encoded) {
  return project_decode(encoded, four_qubit_code_space(), 1);
}

StateVector encode_general_parity(const StateVector& logical) {
  int l_count = logical.n_qubits;
  int n = 2 * l_count + 2;
  std::int64_t dim = checked_dimension(n);
  Vector out = Vector::Zero(dim);
  for (std::int64_t i = 0; i < logical.dim(); ++i) {
    Complex amp = logical.amplitudes(i);
    if (amp == Complex(0.0, 0.0)) continue;
    std::int64_t index = 0;
    int parity = 0;
    for (int l = 1; l <= l_count; ++l) {
      int bit = bit_of(i, l, l_count);
      parity ^= bit;
      if (bit) index |= qubit_mask(2 * l - 1, n);
      if (!bit) index |= qubit_mask(2 * l, n);
    }
    if (parity) index |= qubit_mask(n - 1, n);
    if (!parity) index |= qubit_mask(n, n);
    out(index) = amp;
  }
  return {n, std::move(out)};
}

StateVector decode_general_parity(const StateVector& encoded) {
  int n = encoded.n_qubits;
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("parity code register width must be even and >= 4");
  }
  int l_count = n / 2 - 1;
  return project_decode(encoded, general_parity_code_space(l_count), l_count);
}

StateVector encode_correlated(Complex c0, Complex c1) {
  Vector out = Vector::Zero(4);
  out(0b00) = c0;
  out(0b11) = c1;
  return {2, std::move(out)};
}

StateVector decode_correlated(const StateVector& encoded) {
  return project_decode(encoded, correlated_code_space(), 1);
}

Subspace four_qubit_code_space() {
  Matrix basis = Matrix::Zero(16, 2);
  basis(0b0101, 0) = 1.0;
  basis(0b1010, 1) = 1.0;
  return {4, std::move(basis)};
}

Subspace general_parity_code_space(int logical_qubits) {
  std::int64_t logical_dim = checked_dimension(logical_qubits);
  int n = 2 * logical_qubits + 2;
  std::int64_t dim = checked_dimension(n);
  Matrix basis = Matrix::Zero(dim, logical_dim);
  for (std::int64_t i = 0; i < logical_dim; ++i) {
    Vector e = Vector::Zero(logical_dim);
    e(i) = 1.0;
    StateVector enc = encode_general_parity(StateVector(logical_qubits, std::move(e)));
    basis.col(i) = enc.amplitudes;
  }
  return {n, std::move(basis)};
}

Subspace correlated_code_space() {
  Matrix basis = Matrix::Zero(4, 2);
  basis(0b00, 0) = 1.0;
  basis(0b11, 1) = 1.0;
  return {2, std::move(basis)};
}

Syndrome measure_syndrome(const StateVector& state, int pairs,
                          std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("need at least one pair");
  if (state.n_qubits != 2 * pairs) {
    throw std::invalid_argument("register width does not match pair count");
  }
  double total = state.norm();
  if (total <= 1e-12) throw std::invalid_argument("cannot measure a zero state");

  Rng rng(seed);
  Vector amps = state.amplitudes / total;
  std::int64_t dim = amps.size();
  int n = state.n_qubits;
  Syndrome result;
  result.outcomes.resize(static_cast<std::size_t>(pairs), 0);
  for (int l = 1; l <= pairs; ++l) {
    std::int64_t m1 = qubit_mask(2 * l - 1, n);
    std::int64_t m2 = qubit_mask(2 * l, n);
    // Outcome of the pair parity: +2 for |11>, -2 for |00>, 0 for one
    // excitation (error-aligned labels: the sign names the error that
    // raises or lowers the pair).
    double p_down = 0.0, p_zero = 0.0, p_up = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
      double w = std::norm(amps(i));
      if (w == 0.0) continue;
      bool b1 = (i & m1) != 0;
      bool b2 = (i & m2) != 0;
      if (b1 && b2) p_up += w;
      else if (!b1 && !b2) p_down += w;
      else p_zero += w;
    }
    double u = rng.uniform() * (p_down + p_zero + p_up);
    int outcome;
    if (u < p_down) outcome = -2;
    else if (u < p_down + p_zero) outcome = 0;
    else outcome = +2;
    // Collapse onto the selected parity sector.
    for (std::int64_t i = 0; i < dim; ++i) {
      bool b1 = (i & m1) != 0;
      bool b2 = (i & m2) != 0;
      int s = (b1 && b2) ? +2 : (!b1 && !b2 ? -2 : 0);
      if (s != outcome) amps(i) = 0.0;
    }
    double norm = amps.norm();
    if (norm <= 1e-12) {
      throw numerical_error("syndrome branch has vanishing probability");
    }
    amps /= norm;
    result.outcomes[static_cast<std::size_t>(l - 1)] = outcome;
  }
  result.post_state = StateVector(n, std::move(amps));
  return result;
}

Circuit recovery_circuit(const std::vector<int>& outcomes, int pairs,
                         RecoveryScheme scheme) {
  if (static_cast<int>(outcomes.size()) != pairs) {
    throw std::invalid_argument("outcome count does not match pair count");
  }
  int flagged = 0;
  int where = 0;
  for (int l = 0; l < pairs; ++l) {
    int s = outcomes[static_cast<std::size_t>(l)];
    if (s != -2 && s != 0 && s != 2) {
      throw std::invalid_argument("outcomes must be -2, 0 or +2");
    }
    if (s != 0) {
      ++flagged;
      where = l + 1;
    }
  }
  if (flagged > 1) {
    throw uncorrectable_syndrome_error(
        "more than one pair flagged; single-error recovery cannot proceed");
  }
  int n = 2 * pairs;
  Circuit circuit{n, {}};
  if (flagged == 0) return circuit;
  int sign = outcomes[static_cast<std::size_t>(where - 1)];

  if (scheme == RecoveryScheme::four_qubit) {
    if (pairs != 2) {
      throw std::invalid_argument("four-qubit recovery needs exactly 2 pairs");
    }
    // Copy the intact pair's bits back onto the damaged pair; verified
    // against the exhaustive error table in the tests.
    if (where == 1 && sign == +2) {
      circuit.gates = {{GateKind::cnot, 4, 1}, {GateKind::cnot, 3, 2}};
    } else if (where == 1 && sign == -2) {
      circuit.gates = {{GateKind::cnot, 3, 1}, {GateKind::cnot, 4, 2}};
    } else if (where == 2 && sign == +2) {
      circuit.gates = {{GateKind::cnot, 2, 3}, {GateKind::cnot, 1, 4}};
    } else {
      circuit.gates = {{GateKind::cnot, 1, 3}, {GateKind::cnot, 2, 4}};
    }
    return circuit;
  }

  // General parity recovery: clear the damaged pair to (0,1), rebuild
  // its first bit from the parity of the other pairs, then rebuild the
  // complement bit.
  int first = 2 * where - 1;
  if (sign == +2) {
    circuit.gates.push_back({GateKind::x, 0, first});
  } else {
    circuit.gates.push_back({GateKind::x, 0, first + 1});
  }
  for (int k = 1; k <= pairs; ++k) {
    if (k == where) continue;
    circuit.gates.push_back({GateKind::cnot, 2 * k - 1, first});
  }
  circuit.gates.push_back({GateKind::cnot, first, first + 1});
  return circuit;
}

namespace {

struct SchemeContext {
  Subspace code;
  int pairs = 0;
  int logical_qubits = 0;
};

SchemeContext scheme_context(const StateVector& input, RecoveryScheme scheme) {
  SchemeContext ctx;
  if (scheme == RecoveryScheme::four_qubit) {
    if (input.n_qubits != 1) {
      throw std::invalid_argument("four-qubit code encodes exactly 1 logical qubit");
    }
    ctx.code = four_qubit_code_space();
    ctx.pairs = 2;
    ctx.logical_qubits = 1;
  } else {
    ctx.code = general_parity_code_space(input.n_qubits);
    ctx.pairs = input.n_qubits + 1;
    ctx.logical_qubits = input.n_qubits;
  }
  return ctx;
}

StateVector encode_for(const SchemeContext& ctx, const StateVector& input,
                       RecoveryScheme scheme) {
  if (scheme == RecoveryScheme::four_qubit) {
    return encode_four_qubit(input.amplitudes(0), input.amplitudes(1));
  }
  (void)ctx;
  return encode_general_parity(input);
}

}  // namespace

RoundTripReport roundtrip_inject(const StateVector& input,
                                 const noise::KrausFamily& family,
                                 const std::string& label,
                                 RecoveryScheme scheme, std::uint64_t seed) {
  SchemeContext ctx = scheme_context(input, scheme);
  StateVector logical = input.normalized();
  StateVector encoded = encode_for(ctx, logical, scheme);
  if (family.n_qubits != encoded.n_qubits) {
    throw std::invalid_argument("family register does not match the code");
  }
  int idx = family.index_of(label);
  if (idx < 0) {
    std::string known;
    for (const auto& l : family.labels) known += (known.empty() ? "" : ", ") + l;
    throw std::invalid_argument("no operator labeled \"" + label +
                                "\" (have: " + known + ")");
  }

  RoundTripReport report;
  report.injected_label = label;
  StateVector damaged = family.ops[static_cast<std::size_t>(idx)] * encoded;
  double norm = damaged.norm();
  if (norm <= 1e-12) {
    // The operator annihilates every code state; nothing ever happens
    // along this branch.
    report.syndrome.assign(static_cast<std::size_t>(ctx.pairs), 0);
    report.recovery = Circuit{encoded.n_qubits, {}};
    report.fidelity = 1.0;
    report.zero_amplitude = true;
    return report;
  }
  damaged = StateVector(damaged.n_qubits, damaged.amplitudes / norm);

  Syndrome syndrome = measure_syndrome(damaged, ctx.pairs, seed);
  report.syndrome = syndrome.outcomes;
  StateVector recovered = syndrome.post_state;
  try {
    report.recovery = recovery_circuit(syndrome.outcomes, ctx.pairs, scheme);
    recovered = apply_circuit(report.recovery, recovered);
  } catch (const uncorrectable_syndrome_error&) {
    report.correctable = false;
    report.recovery = Circuit{encoded.n_qubits, {}};
  }
  Vector decoded = project_logical(recovered, ctx.code);
  report.fidelity = std::norm(logical.amplitudes.dot(decoded));
  return report;
}

MonteCarloReport roundtrip_monte_carlo(const StateVector& input,
                                       const noise::KrausFamily& family,
                                       RecoveryScheme scheme, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  SchemeContext ctx = scheme_context(input, scheme);
  StateVector logical = input.normalized();
  StateVector encoded = encode_for(ctx, logical, scheme);
  if (family.n_qubits != encoded.n_qubits) {
    throw std::invalid_argument("family register does not match the code");
  }
  double residual = family.completeness_residual();
  if (residual > 1e-8) {
    throw incomplete_family_error(
        "Monte Carlo needs a completeness-resolving family (residual " +
            std::to_string(residual) + ")",
        residual);
  }

  // Branch states and their Born probabilities.
  const int m = family.size();
  std::vector<StateVector> branches;
  std::vector<double> weights(static_cast<std::size_t>(m), 0.0);
  branches.reserve(static_cast<std::size_t>(m));
  double total = 0.0;
  for (int a = 0; a < m; ++a) {
    StateVector branch = family.ops[static_cast<std::size_t>(a)] * encoded;
    double p = branch.amplitudes.squaredNorm();
    weights[static_cast<std::size_t>(a)] = std::max(p, 0.0);
    total += weights[static_cast<std::size_t>(a)];
    branches.push_back(std::move(branch));
  }
  if (total <= 0.0) throw numerical_error("all channel branches vanish");

  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  std::vector<double> fidelity_sums(static_cast<std::size_t>(m), 0.0);
  std::map<std::vector<int>, std::int64_t> syndrome_counts;
  double sum = 0.0, sum_sq = 0.0;

  Rng base(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = base.fork(static_cast<std::uint64_t>(t));
    double u = rng.uniform() * total;
    int pick = m - 1;
    double acc = 0.0;
    for (int a = 0; a < m; ++a) {
      acc += weights[static_cast<std::size_t>(a)];
      if (u < acc) {
        pick = a;
        break;
      }
    }
    const StateVector& branch = branches[static_cast<std::size_t>(pick)];
    double norm = branch.norm();
    double fidelity;
    if (norm <= 1e-12) {
      fidelity = 1.0;  // zero-probability branch, never actually sampled
    } else {
      StateVector damaged(branch.n_qubits, branch.amplitudes / norm);
      Syndrome syndrome = measure_syndrome(damaged, ctx.pairs, rng.next_u64());
      ++syndrome_counts[syndrome.outcomes];
      StateVector recovered = syndrome.post_state;
      try {
        Circuit recovery = recovery_circuit(syndrome.outcomes, ctx.pairs, scheme);
        recovered = apply_circuit(recovery, recovered);
      } catch (const uncorrectable_syndrome_error&) {
        ++report.uncorrectable_count;
      }
      Vector decoded = project_logical(recovered, ctx.code);
      fidelity = std::norm(logical.amplitudes.dot(decoded));
    }
    ++counts[static_cast<std::size_t>(pick)];
    fidelity_sums[static_cast<std::size_t>(pick)] += fidelity;
    sum += fidelity;
    sum_sq += fidelity * fidelity;
  }

  report.mean_fidelity = sum / trials;
  if (trials > 1) {
    double var = (sum_sq - sum * sum / trials) / (trials - 1);
    report.std_error = std::sqrt(std::max(var, 0.0) / trials);
  }
  for (int a = 0; a < m; ++a) {
    std::int64_t c = counts[static_cast<std::size_t>(a)];
    report.per_operator.push_back(
        {family.labels[static_cast<std::size_t>(a)], c,
         c > 0 ? fidelity_sums[static_cast<std::size_t>(a)] / c : 0.0});
  }
  for (const auto& [outcomes, count] : syndrome_counts) {
    report.per_syndrome.push_back({outcomes, count});
  }
  return report;
}

}  // namespace qcav::codes
