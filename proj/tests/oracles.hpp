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

// Reference implementations used only by the tests.  Each one computes
// the quantity of interest along a different code path than the library
// (index arithmetic instead of Eigen kron, exact integer elimination
// instead of SVD rank, exhaustive enumeration instead of sampling) so
// that agreement is meaningful evidence rather than a tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcav/codes.hpp"
#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/rng.hpp"
#include "qcav/types.hpp"

namespace oracle {

using qcav::Complex;
using qcav::Matrix;
using qcav::StateVector;
using qcav::Vector;

// Kronecker product by explicit quadruple loop.
inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    for (std::int64_t j = 0; j < a.cols(); ++j) {
      for (std::int64_t k = 0; k < b.rows(); ++k) {
        for (std::int64_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

// |<a|b>|.
inline double overlap_mag(const StateVector& a, const StateVector& b) {
  return std::abs(qcav::inner(a, b));
}

// Exact rank of an integer matrix via Bareiss fraction-free elimination.
// Intermediate products are taken in 128-bit arithmetic; with the small
// 0/±few entries used in tests the minors stay far below that range.
inline int integer_rank(std::vector<std::vector<long long>> a) {
  if (a.empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  long long prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    for (int r = rank + 1; r < rows; ++r) {
      auto& row = a[static_cast<std::size_t>(r)];
      const auto& prow = a[static_cast<std::size_t>(rank)];
      for (int c = col + 1; c < cols; ++c) {
        __int128 num =
            static_cast<__int128>(row[static_cast<std::size_t>(c)]) *
                prow[static_cast<std::size_t>(col)] -
            static_cast<__int128>(row[static_cast<std::size_t>(col)]) *
                prow[static_cast<std::size_t>(c)];
        row[static_cast<std::size_t>(c)] = static_cast<long long>(num / prev);
      }
      row[static_cast<std::size_t>(col)] = 0;
    }
    prev = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
    ++rank;
  }
  return rank;
}

// Rounds a (near-)integer real matrix into the exact grid integer_rank
// expects; throws if any entry strays from the integers.
inline std::vector<std::vector<long long>> integer_grid(const Matrix& m) {
  std::vector<std::vector<long long>> out(static_cast<std::size_t>(m.rows()));
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    out[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(m.cols()));
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      Complex z = m(r, c);
      long long v = std::llround(z.real());
      if (std::abs(z.real() - static_cast<double>(v)) > 1e-9 ||
          std::abs(z.imag()) > 1e-9) {
        throw std::invalid_argument("matrix entry is not an integer");
      }
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
    }
  }
  return out;
}

// Dimension of the joint kernel of a set of operators, computed by exact
// integer elimination on the stacked matrix.  Only valid for operator
// entries on the integer grid (couplings 1).
inline int joint_kernel_dim_exact(const std::vector<qcav::OperatorMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("need at least one operator");
  const std::int64_t dim = ops.front().dim();
  Matrix stacked(static_cast<std::int64_t>(ops.size()) * dim, dim);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    stacked.middleRows(static_cast<std::int64_t>(k) * dim, dim) = ops[k].entries;
  }
  return static_cast<int>(dim) - integer_rank(integer_grid(stacked));
}

// Zeroes every amplitude whose pair sectors disagree with the given
// syndrome pattern (+2 <-> |11>, -2 <-> |00>, 0 <-> {|01>,|10>}).
inline Vector project_pair_pattern(const Vector& amps, int n_qubits,
                                   const std::vector<int>& outcomes) {
  Vector out = amps;
  const int pairs = static_cast<int>(outcomes.size());
  for (std::int64_t idx = 0; idx < out.size(); ++idx) {
    for (int l = 1; l <= pairs; ++l) {
      int hi = static_cast<int>((idx >> (n_qubits - (2 * l - 1))) & 1);
      int lo = static_cast<int>((idx >> (n_qubits - 2 * l)) & 1);
      int sector = (hi && lo) ? +2 : (!hi && !lo) ? -2 : 0;
      if (sector != outcomes[static_cast<std::size_t>(l - 1)]) {
        out(idx) = Complex(0.0, 0.0);
        break;
      }
    }
  }
  return out;
}

// Expected mean post-recovery fidelity of the sampled round trip, by
// exhaustive enumeration of (Kraus branch) x (syndrome pattern) instead
// of Monte Carlo: sum over branches a and patterns s of
//   |A_a psi|^2 * P(s | branch) * |<psi_enc | recover(collapse)>|^2.
// Patterns the recovery table rejects contribute the unrecovered
// fidelity, mirroring the simulator's uncorrectable path.
inline double exact_roundtrip_mean(const StateVector& encoded,
                                   const qcav::noise::KrausFamily& family,
                                   qcav::codes::RecoveryScheme scheme) {
  const int n = encoded.n_qubits;
  const int pairs = n / 2;
  const StateVector psi = encoded.normalized();
  double mean = 0.0;
  std::int64_t patterns = 1;
  for (int l = 0; l < pairs; ++l) patterns *= 3;
  for (const auto& op : family.ops) {
    Vector branch = op.entries * psi.amplitudes;
    double weight = branch.squaredNorm();
    if (weight <= 1e-30) continue;
    branch /= std::sqrt(weight);
    for (std::int64_t code = 0; code < patterns; ++code) {
      std::vector<int> outcomes(static_cast<std::size_t>(pairs));
      std::int64_t rest = code;
      for (int l = 0; l < pairs; ++l) {
        outcomes[static_cast<std::size_t>(l)] = static_cast<int>(rest % 3) * 2 - 2;
        rest /= 3;
      }
      Vector collapsed = project_pair_pattern(branch, n, outcomes);
      double prob = collapsed.squaredNorm();
      if (prob <= 1e-30) continue;
      StateVector post(n, collapsed / std::sqrt(prob));
      StateVector recovered = post;
      try {
        qcav::codes::Circuit fix =
            qcav::codes::recovery_circuit(outcomes, pairs, scheme);
        recovered = qcav::codes::apply_circuit(fix, post);
      } catch (const qcav::uncorrectable_syndrome_error&) {
      }
      double f = std::norm(qcav::inner(psi, recovered));
      mean += weight * prob * f;
    }
  }
  return mean;
}

// Complete Kraus family from a Haar-random isometry sliced into blocks:
// stacking the returned operators reproduces the isometry, so
// sum_a A_a^dagger A_a = I holds to machine precision by construction.
inline qcav::noise::KrausFamily random_complete_family(int n_qubits, int m,
                                                       qcav::Rng& rng) {
  const std::int64_t dim = qcav::checked_dimension(n_qubits);
  Matrix isometry = qcav::random_isometry(static_cast<int>(dim) * m,
                                          static_cast<int>(dim), rng);
  std::vector<qcav::OperatorMatrix> ops;
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a) {
    ops.push_back({n_qubits, isometry.middleRows(a * dim, dim)});
    labels.push_back("K" + std::to_string(a));
  }
  return {n_qubits, std::move(ops), std::move(labels)};
}

// A labeled complete family together with a code that either is (by
// construction) or robustly is not avoided by every operator.
struct CodeInstance {
  qcav::noise::KrausFamily family;
  qcav::Subspace code;
  bool avoided = false;
};

// Builds A_a = U (gamma_a I_M  (+)  C_a) U^dagger with |gamma| = 1 and the
// complement blocks C_a sliced from an isometry, so the family is complete
// and acts on the first M columns of U as pure scalars.  When avoided is
// false, one operator gains an eps-sized code-to-complement coupling and
// the whole family is renormalized on the right to restore completeness,
// which breaks the scalar action without breaking anything else.
inline CodeInstance code_instance(int n_qubits, int code_dim, int n_ops,
                                  qcav::Rng& rng, bool avoided,
                                  double eps = 0.05) {
  const std::int64_t dim = qcav::checked_dimension(n_qubits);
  const int m = code_dim;
  const int k = static_cast<int>(dim) - m;
  if (m < 1 || k < 1) throw std::invalid_argument("need 1 <= M < 2^n");
  Matrix u = qcav::random_unitary(static_cast<int>(dim), rng);

  Vector gamma(n_ops);
  for (int a = 0; a < n_ops; ++a) gamma(a) = rng.complex_gaussian();
  gamma /= gamma.norm();
  Matrix comp_stack = qcav::random_isometry(n_ops * k, k, rng);

  std::vector<Matrix> blocks(static_cast<std::size_t>(n_ops));
  for (int a = 0; a < n_ops; ++a) {
    Matrix d = Matrix::Zero(dim, dim);
    d.topLeftCorner(m, m) = gamma(a) * Matrix::Identity(m, m);
    d.bottomRightCorner(k, k) = comp_stack.middleRows(a * k, k);
    blocks[static_cast<std::size_t>(a)] = std::move(d);
  }
  if (!avoided) {
    blocks[0](m, 0) += eps;
    Matrix total = Matrix::Zero(dim, dim);
    for (const Matrix& d : blocks) total += d.adjoint() * d;
    Matrix root =
        qcav::hilbert::principal_sqrt_psd({n_qubits, total}).entries;
    Matrix inverse_root = root.inverse();
    for (Matrix& d : blocks) d = d * inverse_root;
  }

  std::vector<qcav::OperatorMatrix> ops;
  std::vector<std::string> labels;
  for (int a = 0; a < n_ops; ++a) {
    ops.push_back({n_qubits, u * blocks[static_cast<std::size_t>(a)] *
                                 u.adjoint()});
    labels.push_back("K" + std::to_string(a));
  }
  return {{n_qubits, std::move(ops), std::move(labels)},
          qcav::Subspace(n_qubits, u.leftCols(m)),
          avoided};
}

// All sixteen two-qubit Pauli products with coefficient 1/4.  The family
// is complete and mixes every state toward the maximally mixed state.
inline qcav::noise::KrausFamily full_two_qubit_pauli_family() {
  using qcav::noise::Pauli;
  using qcav::noise::PauliTerm;
  const std::pair<const char*, Pauli> singles[] = {
      {"X", Pauli::x}, {"Y", Pauli::y}, {"Z", Pauli::z}};
  std::vector<qcav::OperatorMatrix> ops;
  std::vector<std::string> labels;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      std::vector<PauliTerm> factors;
      std::string label;
      if (p > 0) {
        factors.push_back({singles[p - 1].second, 1});
        label += singles[p - 1].first;
      } else {
        label += "I";
      }
      if (q > 0) {
        factors.push_back({singles[q - 1].second, 2});
        label += singles[q - 1].first;
      } else {
        label += "I";
      }
      ops.push_back(qcav::noise::pauli_product(Complex(0.25, 0.0), factors, 2));
      labels.push_back(std::move(label));
    }
  }
  return {2, std::move(ops), std::move(labels)};
}

}  // namespace oracle
