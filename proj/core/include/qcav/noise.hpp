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

#include <string>
#include <vector>

#include "qcav/hilbert.hpp"
#include "qcav/types.hpp"

namespace qcav::noise {

enum class Pauli { x, y, z, plus, minus };

// One single-qubit Pauli (or raising/lowering) factor inside a product
// term: `kind` acting on 1-based `qubit`.
struct PauliTerm {
  Pauli kind;
  int qubit;
};

// Reads "x", "y", "z", "+", "-" (also "plus"/"minus").
Pauli pauli_from_string(const std::string& s);
std::string to_string(Pauli p);

// Single-qubit operator `kind` embedded on qubit `qubit` of an n-qubit
// register, identity elsewhere.  Conventions: sigma_z|0> = +|0>,
// sigma_z|1> = -|1>; sigma_plus|0> = |1>, sigma_minus|1> = |0>.
OperatorMatrix sigma(Pauli kind, int qubit, int n_qubits);

// coeff * product of the factors, embedded on n qubits.
OperatorMatrix pauli_product(Complex coeff, const std::vector<PauliTerm>& factors,
                             int n_qubits);

// Labeled family of Kraus operators {A_a} on a common register.  The
// family is "complete" when sum_a A_a^dagger A_a = I; families holding
// only the error part of a model are legal and carry a large residual.
struct KrausFamily {
  int n_qubits = 0;
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;

  KrausFamily() = default;
  KrausFamily(int n, std::vector<OperatorMatrix> ops,
              std::vector<std::string> labels);

  int size() const { return static_cast<int>(ops.size()); }
  std::int64_t dim() const;
  // Index of the operator with the given label; -1 if absent.
  int index_of(const std::string& label) const;

  // max-norm of (sum_a A_a^dagger A_a - I).
  double completeness_residual() const;
  bool is_complete(double tol = 1e-10) const;
};

// Mixing matrix x relating two Kraus families of the same channel,
// B_b = sum_a x(b,a) A_a.  Unitarity is validated to 1e-10 on
// construction.
struct MixingUnitary {
  Matrix x;

  explicit MixingUnitary(Matrix m);
  int size() const { return static_cast<int>(x.rows()); }
};

// Weak symmetric coupling of every qubit to the same bath: error
// operators gamma_alpha * sum_l sigma_l^alpha for alpha in {+, -, z}.
// Operators with gamma == 0 are omitted.  Labels "A+", "A-", "Az".
KrausFamily build_collective_model(int n_qubits, Complex gamma_plus,
                                   Complex gamma_minus, Complex gamma_z);

// Per-pair coupling strengths for the pairwise-collective model.
struct PairGammas {
  Complex plus{0.0, 0.0};
  Complex minus{0.0, 0.0};
  Complex z{0.0, 0.0};
};

// Noise collective only within nearest-neighbour pairs: for each pair
// l = 1..L the register holds qubits (2l-1, 2l) and the error operators
// are gamma_l^alpha * (sigma^alpha on 2l-1 + sigma^alpha on 2l).
// `gammas` holds either one entry (applied to every pair) or L entries.
// Labels "A1+", "A1-", "A1z", "A2+", ...; zero couplings are omitted.
// The register width is 2L, checked against the qubit cap.
KrausFamily build_pairwise_model(int pairs, const std::vector<PairGammas>& gammas);

// Two-qubit correlated exchange noise: A_1 = gamma * sigma_1^+ sigma_2^-,
// A_2 = gamma * sigma_2^+ sigma_1^-.  Labels "A1", "A2".
KrausFamily build_correlated_swap_model(Complex gamma);

// Prepends A_0 = principal_sqrt(I - sum_a A_a^dagger A_a) (label "A0")
// so the family resolves the identity.  Throws not_psd_error with a
// hint to shrink the couplings when the subtraction is indefinite.
KrausFamily complete_family(const KrausFamily& errors, double tol = kDefaultTol);

// Completeness residual of the family (same value as the method; free
// function form for symmetry with the other family operations).
double check_completeness(const KrausFamily& family);

// New family B_b = sum_a x(b,a) A_a.  Sizes must agree.  Labels are
// carried through permutations and regenerated ("B0", "B1", ...)
// otherwise.
KrausFamily transform_family(const KrausFamily& family, const MixingUnitary& x);

// Result of canonicalize_family: the mixed family with operator 0
// proportional to the identity, the mixing that achieved it, and the
// proportionality coefficient gamma_0 (real, positive).
struct CanonicalFamily {
  KrausFamily family;
  MixingUnitary mixing;
  double gamma0;
};

// Rotates the family so operator 0 becomes gamma_0 * I.  Requires the
// identity to lie in the span of the family (least-squares residual
// <= tol), else throws canonicalization_error.
CanonicalFamily canonicalize_family(const KrausFamily& family,
                                    double tol = kDefaultTol);

// Removes linear dependence: returns a family of Hilbert-Schmidt
// orthogonal operators spanning the same set and inducing the same
// channel (eigenbasis of the Gram matrix; eigenvalues below
// tol * max(1, lambda_max) are dropped).  Already-independent families
// are returned unchanged.
KrausFamily minimal_family(const KrausFamily& family, double tol = 1e-10);

}  // namespace qcav::noise
