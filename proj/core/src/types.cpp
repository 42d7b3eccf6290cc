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

#include "qcav/types.hpp"

#include <cstdlib>
#include <stdexcept>

#include "qcav/errors.hpp"

namespace qcav {

int qubit_cap() {
  const char* env = std::getenv("QCAV_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return kDefaultQubitCap;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1 || value > 30) {
    return kDefaultQubitCap;
  }
  return static_cast<int>(value);
}

std::int64_t checked_dimension(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("register width must be at least 1 qubit, got " +
                                std::to_string(n_qubits));
  }
  int cap = qubit_cap();
  if (n_qubits > cap) {
    throw resource_limit_error(
        "register of " + std::to_string(n_qubits) +
        " qubits exceeds the cap of " + std::to_string(cap) +
        " (raise QCAV_MAX_QUBITS to override)");
  }
  return std::int64_t{1} << n_qubits;
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs(const Vector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(Matrix(a - b)) <= tol;
}

bool approx_equal(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  return max_abs(Vector(a - b)) <= tol;
}

std::string bits_of_index(std::int64_t index, int n_qubits) {
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 1; q <= n_qubits; ++q) {
    if ((index >> (n_qubits - q)) & 1) bits[static_cast<std::size_t>(q - 1)] = '1';
  }
  return bits;
}

std::int64_t index_of_bits(const std::string& bits) {
  if (bits.empty()) throw std::invalid_argument("empty bitstring");
  std::int64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring must contain only 0/1, got \"" +
                                  bits + "\"");
    }
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  return index;
}

int bit_of(std::int64_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - qubit)) & 1);
}

}  // namespace qcav
