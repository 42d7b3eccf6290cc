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

#include "qcav/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qcav/codes.hpp"
#include "qcav/errors.hpp"

namespace qcav::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw parse_error(where + ": " + what);
}

const Json& field(const Json& j, const std::string& name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, "missing field \"" + name + "\"");
  return *it;
}

int int_field(const Json& j, const std::string& name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer()) fail(where + "." + name, "expected an integer");
  return v.get<int>();
}

Complex complex_field(const Json& j, const std::string& name,
                      const std::string& where, Complex fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  return complex_from_json(j.at(name), where + "." + name);
}

std::string type_name(ModelSpec::Type t) {
  switch (t) {
    case ModelSpec::Type::collective: return "collective";
    case ModelSpec::Type::pairwise: return "pairwise";
    case ModelSpec::Type::correlated_swap: return "correlated_swap";
    case ModelSpec::Type::custom: return "custom";
  }
  return "?";
}

bool parse_assignment(const std::string& text, const std::string& key, int* out) {
  if (text.rfind(key, 0) != 0) return false;
  std::string rest = text.substr(key.size());
  if (rest.empty()) return false;
  char* end = nullptr;
  long v = std::strtol(rest.c_str(), &end, 10);
  if (end == nullptr || *end != '\0') return false;
  *out = static_cast<int>(v);
  return true;
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  fail(where, "expected a number or [re, im]");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::int64_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::int64_t j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
  std::int64_t rows = static_cast<std::int64_t>(j.size());
  std::int64_t cols = -1;
  Matrix m;
  for (std::int64_t r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) fail(where, "row " + std::to_string(r) + " is not an array");
    if (cols < 0) {
      cols = static_cast<std::int64_t>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<std::int64_t>(row.size()) != cols) {
      fail(where, "ragged rows");
    }
    for (std::int64_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  where + "[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "]");
    }
  }
  return m;
}

Json state_to_json(const StateVector& psi) {
  Json amplitudes = Json::object();
  std::map<std::string, Json> sorted;
  for (std::int64_t i = 0; i < psi.dim(); ++i) {
    if (std::abs(psi.amplitudes(i)) <= 1e-14) continue;
    sorted[bits_of_index(i, psi.n_qubits)] = complex_to_json(psi.amplitudes(i));
  }
  for (auto& [bits, amp] : sorted) amplitudes[bits] = std::move(amp);
  Json out = Json::object();
  out["qubits"] = psi.n_qubits;
  out["amplitudes"] = std::move(amplitudes);
  return out;
}

StateVector state_from_json(const Json& j, const std::string& where) {
  const Json* amplitudes = &j;
  int n = 0;
  if (j.is_object() && j.contains("amplitudes")) {
    amplitudes = &j.at("amplitudes");
    if (j.contains("qubits")) n = int_field(j, "qubits", where);
  }
  if (!amplitudes->is_object()) fail(where, "expected a bitstring->amplitude map");
  if (n == 0) {
    if (amplitudes->empty()) fail(where, "cannot infer register width from an empty map");
    n = static_cast<int>(amplitudes->begin().key().size());
  }
  std::int64_t dim = checked_dimension(n);
  Vector v = Vector::Zero(dim);
  for (auto it = amplitudes->begin(); it != amplitudes->end(); ++it) {
    const std::string& bits = it.key();
    if (static_cast<int>(bits.size()) != n) {
      fail(where, "bitstring \"" + bits + "\" does not match width " +
                      std::to_string(n));
    }
    std::int64_t index;
    try {
      index = index_of_bits(bits);
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
    v(index) += complex_from_json(it.value(), where + "." + bits);
  }
  return {n, std::move(v)};
}

ModelSpec ModelSpec::from_json(const Json& j) {
  const std::string where = "model";
  std::string type = field(j, "type", where).get<std::string>();
  ModelSpec spec;
  spec.gamma0 = complex_field(j, "gamma0", where, Complex(0.0, 0.0));
  if (type == "collective") {
    spec.type = Type::collective;
    spec.n_qubits = int_field(j, "qubits", where);
    spec.gamma_plus = complex_field(j, "gamma_plus", where, Complex(0.0, 0.0));
    spec.gamma_minus = complex_field(j, "gamma_minus", where, Complex(0.0, 0.0));
    spec.gamma_z = complex_field(j, "gamma_z", where, Complex(0.0, 0.0));
  } else if (type == "pairwise") {
    spec.type = Type::pairwise;
    spec.pairs = int_field(j, "pairs", where);
    const Json& gammas = field(j, "pair_gammas", where);
    if (!gammas.is_array() || gammas.empty()) {
      fail(where + ".pair_gammas", "expected a non-empty array");
    }
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      const std::string gw = where + ".pair_gammas[" + std::to_string(k) + "]";
      noise::PairGammas pg;
      pg.plus = complex_field(gammas[k], "plus", gw, Complex(0.0, 0.0));
      pg.minus = complex_field(gammas[k], "minus", gw, Complex(0.0, 0.0));
      pg.z = complex_field(gammas[k], "z", gw, Complex(0.0, 0.0));
      spec.pair_gammas.push_back(pg);
    }
  } else if (type == "correlated_swap") {
    spec.type = Type::correlated_swap;
    spec.gamma = complex_from_json(field(j, "gamma", where), where + ".gamma");
  } else if (type == "custom") {
    spec.type = Type::custom;
    spec.n_qubits = int_field(j, "qubits", where);
    const Json& ops = field(j, "operators", where);
    if (!ops.is_array() || ops.empty()) {
      fail(where + ".operators", "expected a non-empty array");
    }
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const Json& op = ops[k];
      const std::string ow = where + ".operators[" + std::to_string(k) + "]";
      CustomOperator custom;
      custom.label = op.contains("label") ? op.at("label").get<std::string>()
                                          : "K" + std::to_string(k);
      if (op.contains("matrix")) {
        custom.matrix = matrix_from_json(op.at("matrix"), ow + ".matrix");
      } else if (op.contains("terms")) {
        const Json& terms = op.at("terms");
        if (!terms.is_array()) fail(ow + ".terms", "expected an array");
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const std::string tw = ow + ".terms[" + std::to_string(t) + "]";
          CustomOperator::Term term;
          term.coeff = complex_from_json(field(terms[t], "coeff", tw), tw + ".coeff");
          if (terms[t].contains("factors")) {
            for (const Json& f : terms[t].at("factors")) {
              noise::PauliTerm pt;
              pt.qubit = int_field(f, "qubit", tw + ".factors");
              try {
                pt.kind = noise::pauli_from_string(
                    field(f, "kind", tw + ".factors").get<std::string>());
              } catch (const std::invalid_argument& e) {
                fail(tw + ".factors", e.what());
              }
              term.factors.push_back(pt);
            }
          }
          custom.terms.push_back(std::move(term));
        }
      } else {
        fail(ow, "operator needs \"matrix\" or \"terms\"");
      }
      spec.operators.push_back(std::move(custom));
    }
  } else {
    fail(where + ".type",
         "unknown type \"" + type +
             "\" (want collective, pairwise, correlated_swap or custom)");
  }
  return spec;
}

Json ModelSpec::to_json() const {
  Json j = Json::object();
  j["type"] = type_name(type);
  switch (type) {
    case Type::collective:
      j["qubits"] = n_qubits;
      j["gamma_plus"] = complex_to_json(gamma_plus);
      j["gamma_minus"] = complex_to_json(gamma_minus);
      j["gamma_z"] = complex_to_json(gamma_z);
      break;
    case Type::pairwise: {
      j["pairs"] = pairs;
      Json gammas = Json::array();
      for (const auto& pg : pair_gammas) {
        Json g = Json::object();
        g["plus"] = complex_to_json(pg.plus);
        g["minus"] = complex_to_json(pg.minus);
        g["z"] = complex_to_json(pg.z);
        gammas.push_back(std::move(g));
      }
      j["pair_gammas"] = std::move(gammas);
      break;
    }
    case Type::correlated_swap:
      j["gamma"] = complex_to_json(gamma);
      break;
    case Type::custom: {
      j["qubits"] = n_qubits;
      Json ops = Json::array();
      for (const auto& op : operators) {
        Json o = Json::object();
        o["label"] = op.label;
        if (op.matrix.size() > 0) {
          o["matrix"] = matrix_to_json(op.matrix);
        } else {
          Json terms = Json::array();
          for (const auto& term : op.terms) {
            Json t = Json::object();
            t["coeff"] = complex_to_json(term.coeff);
            Json factors = Json::array();
            for (const auto& f : term.factors) {
              Json pf = Json::object();
              pf["qubit"] = f.qubit;
              pf["kind"] = noise::to_string(f.kind);
              factors.push_back(std::move(pf));
            }
            t["factors"] = std::move(factors);
            terms.push_back(std::move(t));
          }
          o["terms"] = std::move(terms);
        }
        ops.push_back(std::move(o));
      }
      j["operators"] = std::move(ops);
      break;
    }
  }
  j["gamma0"] = complex_to_json(gamma0);
  return j;
}

ModelSpec ModelSpec::preset(const std::string& name) {
  ModelSpec spec;
  spec.gamma0 = Complex(0.9, 0.0);
  if (name == "correlated") {
    spec.type = Type::correlated_swap;
    spec.gamma = Complex(0.3, 0.0);
    return spec;
  }
  int value = 0;
  if (parse_assignment(name, "pairwise:L=", &value)) {
    if (value < 1) throw parse_error("preset \"" + name + "\": L must be >= 1");
    spec.type = Type::pairwise;
    spec.pairs = value;
    spec.pair_gammas = {noise::PairGammas{0.1, 0.1, 0.1}};
    return spec;
  }
  if (parse_assignment(name, "collective:n=", &value)) {
    if (value < 1) throw parse_error("preset \"" + name + "\": n must be >= 1");
    spec.type = Type::collective;
    spec.n_qubits = value;
    spec.gamma_plus = spec.gamma_minus = spec.gamma_z = Complex(0.1, 0.0);
    return spec;
  }
  throw parse_error("unknown model preset \"" + name +
                    "\" (want pairwise:L=<n>, collective:n=<n> or correlated)");
}

int ModelSpec::register_width() const {
  switch (type) {
    case Type::collective: return n_qubits;
    case Type::pairwise: return 2 * pairs;
    case Type::correlated_swap: return 2;
    case Type::custom: return n_qubits;
  }
  return 0;
}

noise::KrausFamily ModelSpec::to_family() const {
  noise::KrausFamily family;
  switch (type) {
    case Type::collective:
      family = noise::build_collective_model(n_qubits, gamma_plus, gamma_minus,
                                             gamma_z);
      break;
    case Type::pairwise:
      family = noise::build_pairwise_model(pairs, pair_gammas);
      break;
    case Type::correlated_swap:
      family = noise::build_correlated_swap_model(gamma);
      break;
    case Type::custom: {
      int n = n_qubits;
      std::int64_t dim = checked_dimension(n);
      std::vector<OperatorMatrix> ops;
      std::vector<std::string> labels;
      for (const auto& op : operators) {
        if (op.matrix.size() > 0) {
          if (op.matrix.rows() != dim || op.matrix.cols() != dim) {
            throw parse_error("operator \"" + op.label +
                              "\": matrix size does not match 2^" +
                              std::to_string(n));
          }
          ops.emplace_back(n, op.matrix);
        } else {
          OperatorMatrix acc = hilbert::zero_op(n);
          for (const auto& term : op.terms) {
            acc = acc + noise::pauli_product(term.coeff, term.factors, n);
          }
          ops.push_back(std::move(acc));
        }
        labels.push_back(op.label);
      }
      family = noise::KrausFamily(n, std::move(ops), std::move(labels));
      break;
    }
  }
  if (gamma0 != Complex(0.0, 0.0)) {
    int n = family.n_qubits;
    std::vector<OperatorMatrix> ops;
    std::vector<std::string> labels;
    ops.push_back(gamma0 * hilbert::identity_op(n));
    labels.emplace_back("A0");
    ops.insert(ops.end(), family.ops.begin(), family.ops.end());
    labels.insert(labels.end(), family.labels.begin(), family.labels.end());
    family = noise::KrausFamily(n, std::move(ops), std::move(labels));
  }
  return family;
}

CodeSpec CodeSpec::from_json(const Json& j) {
  const std::string where = "code";
  CodeSpec spec;
  if (j.contains("builtin")) {
    return preset(j.at("builtin").get<std::string>());
  }
  const Json& basis = field(j, "basis", where);
  if (!basis.is_array() || basis.empty()) {
    fail(where + ".basis", "expected a non-empty array of kets");
  }
  if (j.contains("qubits")) {
    spec.n_qubits = int_field(j, "qubits", where);
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string bw = where + ".basis[" + std::to_string(k) + "]";
    const Json& ket = basis[k];
    if (!ket.is_object() || ket.empty()) fail(bw, "expected a bitstring->amplitude map");
    std::map<std::string, Complex> entry;
    for (auto it = ket.begin(); it != ket.end(); ++it) {
      if (spec.n_qubits == 0) spec.n_qubits = static_cast<int>(it.key().size());
      if (static_cast<int>(it.key().size()) != spec.n_qubits) {
        fail(bw, "bitstring \"" + it.key() + "\" does not match width " +
                     std::to_string(spec.n_qubits));
      }
      try {
        index_of_bits(it.key());
      } catch (const std::invalid_argument& e) {
        fail(bw, e.what());
      }
      entry[it.key()] = complex_from_json(it.value(), bw + "." + it.key());
    }
    spec.basis_kets.push_back(std::move(entry));
  }
  return spec;
}

Json CodeSpec::to_json() const {
  Json j = Json::object();
  if (!builtin.empty()) {
    j["builtin"] = builtin;
    return j;
  }
  j["qubits"] = n_qubits;
  Json basis = Json::array();
  for (const auto& ket : basis_kets) {
    Json k = Json::object();
    for (const auto& [bits, amp] : ket) k[bits] = complex_to_json(amp);
    basis.push_back(std::move(k));
  }
  j["basis"] = std::move(basis);
  return j;
}

CodeSpec CodeSpec::preset(const std::string& name) {
  CodeSpec spec;
  if (name == "four-qubit") {
    spec.builtin = name;
    spec.n_qubits = 4;
    return spec;
  }
  if (name == "correlated") {
    spec.builtin = name;
    spec.n_qubits = 2;
    return spec;
  }
  int value = 0;
  if (parse_assignment(name, "general-parity:L=", &value)) {
    if (value < 1) throw parse_error("preset \"" + name + "\": L must be >= 1");
    spec.builtin = name;
    spec.n_qubits = 2 * value + 2;
    return spec;
  }
  throw parse_error("unknown code preset \"" + name +
                    "\" (want four-qubit, general-parity:L=<n> or correlated)");
}

int CodeSpec::register_width() const { return n_qubits; }

analysis::CodeSubspace CodeSpec::to_code() const {
  if (!builtin.empty()) {
    if (builtin == "four-qubit") return codes::four_qubit_code_space();
    if (builtin == "correlated") return codes::correlated_code_space();
    int value = 0;
    if (parse_assignment(builtin, "general-parity:L=", &value)) {
      return codes::general_parity_code_space(value);
    }
    throw parse_error("unknown built-in code \"" + builtin + "\"");
  }
  std::vector<StateVector> kets;
  std::int64_t dim = checked_dimension(n_qubits);
  for (const auto& entry : basis_kets) {
    Vector v = Vector::Zero(dim);
    for (const auto& [bits, amp] : entry) v(index_of_bits(bits)) += amp;
    kets.emplace_back(n_qubits, std::move(v));
  }
  Subspace space = hilbert::orthonormalize(kets);
  if (space.dim() != static_cast<int>(kets.size())) {
    throw parse_error("code basis kets are linearly dependent (" +
                      std::to_string(kets.size()) + " kets span dimension " +
                      std::to_string(space.dim()) + ")");
  }
  return space;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

namespace {

bool looks_like_model_preset(const std::string& arg) {
  return arg == "correlated" || arg.rfind("pairwise:", 0) == 0 ||
         arg.rfind("collective:", 0) == 0;
}

bool looks_like_code_preset(const std::string& arg) {
  return arg == "four-qubit" || arg == "correlated" ||
         arg.rfind("general-parity:", 0) == 0;
}

}  // namespace

ModelSpec load_model(const std::string& arg) {
  if (looks_like_model_preset(arg)) return ModelSpec::preset(arg);
  return ModelSpec::from_json(read_json_file(arg));
}

CodeSpec load_code(const std::string& arg) {
  if (looks_like_code_preset(arg)) return CodeSpec::preset(arg);
  return CodeSpec::from_json(read_json_file(arg));
}

}  // namespace qcav::io
