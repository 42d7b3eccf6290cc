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

#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/rng.hpp"
#include "qcav/types.hpp"

namespace qcav::channel {

// Mixed state: Hermitian PSD matrix of unit trace.
struct DensityMatrix {
  int n_qubits = 0;
  Matrix entries;

  DensityMatrix() = default;
  DensityMatrix(int n, Matrix m);
  static DensityMatrix pure(const StateVector& psi);

  std::int64_t dim() const { return entries.rows(); }
  double trace_real() const { return entries.trace().real(); }
};

// rho -> sum_a A_a rho A_a^dagger.  The family must be complete to
// 1e-8, else incomplete_family_error.
DensityMatrix apply_channel(const DensityMatrix& rho,
                            const noise::KrausFamily& family);

// sum_a |<psi|A_a|psi>|^2 for the (normalized) input state; equals
// <psi| epsilon(|psi><psi|) |psi> when the family is complete.  The
// sum is computed for any family; the [0, 1] clamp applies only to
// complete ones (error-only families can legitimately exceed 1).
double state_fidelity(const StateVector& psi, const noise::KrausFamily& family);

// Options for the worst-case code fidelity search.
struct FidelityOptions {
  int multistarts = 32;       // random starts beyond the deterministic ones
  int max_iterations = 500;   // per start
  double gradient_tol = 1e-10;
  std::uint64_t seed = 20260214;
  bool grid_prescan = true;   // coarse (theta, phi) sweep for 2-dim codes
};

// Worst-case fidelity over a code space, with the minimizing encoded
// state.  `converged` reports whether the run that achieved the best
// value met the gradient tolerance.
struct FidelityResult {
  double value = 0.0;
  StateVector argmin_state;
  int iterations = 0;
  bool converged = false;
};

// min over unit |psi> in the code of state_fidelity(psi, family),
// by projected gradient descent with multistart.  Accepts any family
// (see state_fidelity); dimension-1 codes are evaluated directly.
FidelityResult code_fidelity(const Subspace& code,
                             const noise::KrausFamily& family,
                             const FidelityOptions& options = {});

// log2(code dimension) / n_qubits: logical-per-physical qubit rate.
// Requires code_dim >= 1 and n_qubits >= 1.
double efficiency(int code_dim, int n_qubits);

}  // namespace qcav::channel
