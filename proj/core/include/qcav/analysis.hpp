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

#include <optional>
#include <string>
#include <vector>

#include "qcav/channel.hpp"
#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/types.hpp"

namespace qcav::analysis {

// A code space is a subspace whose basis column order fixes the logical
// basis: column i encodes |i>.
using CodeSubspace = Subspace;

// Worst Knill-Laflamme violation found: operators (a, b) and logical
// indices (i, j) of the offending matrix element.
struct KlViolation {
  int a = 0;
  int b = 0;
  int i = 0;
  int j = 0;
  double magnitude = 0.0;
};

// The matrix gamma_ab = <i_L| A_a^dagger A_b |i_L> of a correctable
// code: Hermitian, PSD, independent of the logical index i when the
// Knill-Laflamme condition holds.
struct GammaMatrix {
  Matrix entries;             // m x m, averaged over logical indices
  RealVector eigenvalues;     // descending, tiny negatives clamped to 0
  int rank = 0;               // eigenvalues >= tol * max(1, lambda_max)
  bool kl_satisfied = false;  // blocks scalar and equal across indices
  std::optional<KlViolation> violation;  // worst offender when !kl_satisfied
};

// Computes the gamma matrix of the code under the family and checks the
// Knill-Laflamme condition: <i|A_a^dagger A_b|j> = gamma_ab delta_ij to
// within tol * max(1, entry scale).
GammaMatrix gamma_matrix(const CodeSubspace& code,
                         const noise::KrausFamily& family,
                         double tol = kDefaultTol);

enum class CodeClass {
  not_correctable,        // Knill-Laflamme violated
  avoiding,               // rank <= 1: errors act as scalars, no recovery needed
  nondegenerate,          // full-rank gamma
  degenerate,             // correctable, rank strictly between 1 and m
};

std::string to_string(CodeClass c);

struct CodeClassification {
  CodeClass code_class = CodeClass::not_correctable;
  GammaMatrix gamma;
  // For avoiding codes: the scalars gamma_a with A_a|psi> = gamma_a|psi>
  // on the code, sign-fixed so the first nonzero entry is real positive.
  std::vector<Complex> qeac_eigenvalues;
};

// Taxonomy of the code under the family, derived from the gamma matrix
// rank.
CodeClassification classify(const CodeSubspace& code,
                            const noise::KrausFamily& family,
                            double tol = kDefaultTol);

// Checks whether every family operator acts as a scalar on the code:
// A_a v = gamma_a v for all code vectors v.  Returns the scalars when
// so, std::nullopt otherwise.  This is the defining property of an
// error-avoiding code: the noise never moves states, so no recovery
// step is needed.
std::optional<std::vector<Complex>> qeac_scalar_action(
    const CodeSubspace& code, const noise::KrausFamily& family,
    double tol = kDefaultTol);

// Equivalent criterion via the gamma matrix: the code avoids errors iff
// gamma_ab factorizes as conj(gamma_a) * gamma_b (rank <= 1).
bool qeac_gamma_factorizes(const CodeSubspace& code,
                           const noise::KrausFamily& family,
                           double tol = kDefaultTol);

// A simultaneous eigenspace of a family of operators: the eigenvalue of
// each operator, and the subspace on which all of them act by those
// scalars.
struct JointEigenspaceResult {
  std::vector<Complex> eigenvalues;  // one per operator, in input order
  Subspace space;
};

// All maximal joint eigenspaces of the given operators, by iterative
// branch-and-intersect over eigenvalue candidates.  Every candidate
// subspace is re-verified against the full operators before being
// accepted.  Results are sorted by descending dimension.  An empty
// result means no common eigenvector exists.
std::vector<JointEigenspaceResult> find_joint_eigenspace(
    const std::vector<OperatorMatrix>& operators, double tol = kDefaultTol);

// Outcome of the randomized code search.
struct CodeSearchReport {
  std::optional<CodeSubspace> code;  // present iff the search succeeded
  double best_residual = 0.0;        // smallest Knill-Laflamme residual seen
  int trials_used = 0;
  int found_trial = -1;              // 0-based trial that succeeded, or -1
  std::uint64_t seed = 0;
};

// Searches for a code_dim-dimensional correctable code under the family
// by repeated random isometry starts refined with Riemannian gradient
// descent plus a Gauss-Newton polish on the Knill-Laflamme residual.
// Deterministic for a fixed (seed, trials): trial t draws its start
// from the sub-stream t of the seed.  Stops at the first subspace with
// residual <= tol.
CodeSearchReport search_random_code(const noise::KrausFamily& family,
                                    int code_dim, int trials,
                                    std::uint64_t seed, double tol = 1e-8);

}  // namespace qcav::analysis
