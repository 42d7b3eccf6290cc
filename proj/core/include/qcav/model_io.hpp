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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcav/analysis.hpp"
#include "qcav/noise.hpp"
#include "qcav/types.hpp"

namespace qcav::io {

using Json = nlohmann::ordered_json;

// Complex numbers serialize as [re, im]; doubles round-trip exactly.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j, const std::string& where);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& where);

// Sparse ket rendering: {"qubits": n, "amplitudes": {"0101": [re, im],
// ...}} with keys sorted and |amplitude| <= 1e-14 entries omitted.
// state_from_json also accepts a bare bitstring->amplitude map (width
// inferred from the keys) for hand-written files.
Json state_to_json(const StateVector& psi);
StateVector state_from_json(const Json& j, const std::string& where);

// Declarative noise model.  Either one of the built-in shapes with its
// couplings, or a custom operator list (Pauli products or explicit
// matrices).
struct ModelSpec {
  enum class Type { collective, pairwise, correlated_swap, custom };

  struct CustomOperator {
    std::string label;
    // Either a sum of coefficient * Pauli-product terms...
    struct Term {
      Complex coeff;
      std::vector<noise::PauliTerm> factors;
    };
    std::vector<Term> terms;
    // ...or an explicit matrix (used when `matrix` is nonzero-sized).
    Matrix matrix;
  };

  Type type = Type::custom;
  int n_qubits = 0;                       // collective / custom
  int pairs = 0;                          // pairwise
  Complex gamma0{0.0, 0.0};               // scalar no-error operator; 0 = absent
  Complex gamma_plus{0.0, 0.0};           // collective couplings
  Complex gamma_minus{0.0, 0.0};
  Complex gamma_z{0.0, 0.0};
  std::vector<noise::PairGammas> pair_gammas;  // pairwise couplings
  Complex gamma{0.0, 0.0};                // correlated-swap coupling
  std::vector<CustomOperator> operators;  // custom

  static ModelSpec from_json(const Json& j);
  Json to_json() const;

  // Preset strings: "pairwise:L=<n>", "collective:n=<n>", "correlated".
  // Unknown names throw parse_error.
  static ModelSpec preset(const std::string& name);

  // Materializes the Kraus family (gamma0 operator first when present).
  noise::KrausFamily to_family() const;

  int register_width() const;
};

// Declarative code space: a built-in name or explicit basis kets.
struct CodeSpec {
  std::string builtin;  // "four-qubit", "general-parity:L=<n>", "correlated"
  int n_qubits = 0;
  // Each basis vector as bitstring -> amplitude.
  std::vector<std::map<std::string, Complex>> basis_kets;

  static CodeSpec from_json(const Json& j);
  Json to_json() const;
  static CodeSpec preset(const std::string& name);

  analysis::CodeSubspace to_code() const;
  int register_width() const;
};

// Parses `arg` as a preset name when it matches one, else as a path to
// a JSON file.  File/parse problems throw parse_error with the path and
// failing field in the message.
ModelSpec load_model(const std::string& arg);
CodeSpec load_code(const std::string& arg);

Json read_json_file(const std::string& path);

}  // namespace qcav::io
