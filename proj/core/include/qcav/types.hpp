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

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace qcav {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerance for rank decisions, eigenvalue clustering and
// subspace membership tests.  All thresholds scale as tol * max(1, scale)
// where `scale` is a magnitude representative of the operands.
inline constexpr double kDefaultTol = 1e-9;

// Hard cap on register width, overridable via the QCAV_MAX_QUBITS
// environment variable.  Dense simulation beyond ~12 qubits is a mistake
// more often than an intention, so we refuse instead of swapping.
inline constexpr int kDefaultQubitCap = 12;

// Current qubit cap (reads QCAV_MAX_QUBITS on each call; falls back to
// kDefaultQubitCap when unset or unparsable).
int qubit_cap();

// 2^n_qubits, after validating 1 <= n_qubits <= qubit_cap().
// Throws std::invalid_argument for n_qubits < 1 and resource_limit_error
// when the cap is exceeded.
std::int64_t checked_dimension(int n_qubits);

// Largest absolute entry (max norm); the norm used by approximate
// comparisons throughout.
double max_abs(const Matrix& m);
double max_abs(const Vector& v);

bool approx_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
bool approx_equal(const Vector& a, const Vector& b, double tol = kDefaultTol);

// "0101"-style rendering of a basis index, qubit 1 leftmost.
std::string bits_of_index(std::int64_t index, int n_qubits);
// Inverse of bits_of_index; throws std::invalid_argument on bad strings.
std::int64_t index_of_bits(const std::string& bits);
// Value (0 or 1) of the given 1-based qubit within a basis index.
int bit_of(std::int64_t index, int qubit, int n_qubits);

}  // namespace qcav
