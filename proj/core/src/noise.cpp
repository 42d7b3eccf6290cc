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

#include "qcav/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcav/errors.hpp"

namespace qcav::noise {
namespace {

// 2x2 matrix of each single-qubit kind in the sigma_z|0> = +|0>
// convention.
Eigen::Matrix2cd local_matrix(Pauli kind) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const Complex i(0.0, 1.0);
  switch (kind) {
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::y:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case Pauli::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::plus:  // |1><0|
      m(1, 0) = 1.0;
      break;
    case Pauli::minus:  // |0><1|
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

std::string pair_label(int pair, Pauli kind) {
  return "A" + std::to_string(pair) + to_string(kind);
}

}  // namespace

Pauli pauli_from_string(const std::string& s) {
  if (s == "x" || s == "X") return Pauli::x;
  if (s == "y" || s == "Y") return Pauli::y;
  if (s == "z" || s == "Z") return Pauli::z;
  if (s == "+" || s == "plus") return Pauli::plus;
  if (s == "-" || s == "minus") return Pauli::minus;
  throw std::invalid_argument("unknown Pauli kind \"" + s + "\"");
}

std::string to_string(Pauli p) {
  switch (p) {
    case Pauli::x: return "x";
    case Pauli::y: return "y";
    case Pauli::z: return "z";
    case Pauli::plus: return "+";
    case Pauli::minus: return "-";
  }
  return "?";
}

OperatorMatrix sigma(Pauli kind, int qubit, int n_qubits) {
  std::int64_t dim = checked_dimension(n_qubits);
  if (qubit < 1 || qubit > n_qubits) {
    throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                " out of range 1.." + std::to_string(n_qubits));
  }
  Eigen::Matrix2cd local = local_matrix(kind);
  Matrix m = Matrix::Zero(dim, dim);
  std::int64_t mask = std::int64_t{1} << (n_qubits - qubit);
  for (std::int64_t col = 0; col < dim; ++col) {
    int b = (col & mask) ? 1 : 0;
    for (int target = 0; target < 2; ++target) {
      Complex coeff = local(target, b);
      if (coeff == Complex(0.0, 0.0)) continue;
      std::int64_t row = target ? (col | mask) : (col & ~mask);
      m(row, col) += coeff;
    }
  }
  return {n_qubits, std::move(m)};
}

OperatorMatrix pauli_product(Complex coeff, const std::vector<PauliTerm>& factors,
                             int n_qubits) {
  OperatorMatrix acc = hilbert::identity_op(n_qubits);
  for (const auto& f : factors) {
    acc = acc * sigma(f.kind, f.qubit, n_qubits);
  }
  return coeff * acc;
}

KrausFamily::KrausFamily(int n, std::vector<OperatorMatrix> o,
                         std::vector<std::string> l)
    : n_qubits(n), ops(std::move(o)), labels(std::move(l)) {
  checked_dimension(n);
  for (const auto& op : ops) {
    if (op.n_qubits != n) {
      throw std::invalid_argument("family operator register width mismatch");
    }
  }
  if (labels.empty()) {
    for (std::size_t k = 0; k < ops.size(); ++k) {
      labels.push_back("K" + std::to_string(k));
    }
  }
  if (labels.size() != ops.size()) {
    throw std::invalid_argument("family labels do not match operator count");
  }
}

std::int64_t KrausFamily::dim() const { return std::int64_t{1} << n_qubits; }

int KrausFamily::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return static_cast<int>(k);
  }
  return -1;
}

double KrausFamily::completeness_residual() const {
  std::int64_t d = dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& op : ops) sum += op.entries.adjoint() * op.entries;
  return max_abs(Matrix(sum - Matrix::Identity(d, d)));
}

bool KrausFamily::is_complete(double tol) const {
  return completeness_residual() <= tol;
}

MixingUnitary::MixingUnitary(Matrix m) : x(std::move(m)) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("mixing matrix must be square");
  }
  Matrix gram = x.adjoint() * x;
  double err = max_abs(Matrix(gram - Matrix::Identity(x.rows(), x.cols())));
  if (err > 1e-10) {
    throw std::invalid_argument("mixing matrix not unitary (residual " +
                                std::to_string(err) + ")");
  }
}

KrausFamily build_collective_model(int n_qubits, Complex gamma_plus,
                                   Complex gamma_minus, Complex gamma_z) {
  checked_dimension(n_qubits);
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;
  const std::pair<Pauli, Complex> couplings[] = {
      {Pauli::plus, gamma_plus}, {Pauli::minus, gamma_minus}, {Pauli::z, gamma_z}};
  for (const auto& [kind, gamma] : couplings) {
    if (gamma == Complex(0.0, 0.0)) continue;
    OperatorMatrix total = hilbert::zero_op(n_qubits);
    for (int q = 1; q <= n_qubits; ++q) {
      total = total + sigma(kind, q, n_qubits);
    }
    ops.push_back(gamma * total);
    labels.push_back("A" + to_string(kind));
  }
  return {n_qubits, std::move(ops), std::move(labels)};
}

KrausFamily build_pairwise_model(int pairs, const std::vector<PairGammas>& gammas) {
  if (pairs < 1) throw std::invalid_argument("need at least one pair");
  if (gammas.size() != 1 && gammas.size() != static_cast<std::size_t>(pairs)) {
    throw std::invalid_argument("coupling list must have 1 or " +
                                std::to_string(pairs) + " entries");
  }
  int n = 2 * pairs;
  checked_dimension(n);
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;
  for (int l = 1; l <= pairs; ++l) {
    const PairGammas& g = gammas.size() == 1 ? gammas[0]
                                            : gammas[static_cast<std::size_t>(l - 1)];
    const std::pair<Pauli, Complex> couplings[] = {
        {Pauli::plus, g.plus}, {Pauli::minus, g.minus}, {Pauli::z, g.z}};
    for (const auto& [kind, gamma] : couplings) {
      if (gamma == Complex(0.0, 0.0)) continue;
      OperatorMatrix both = sigma(kind, 2 * l - 1, n) + sigma(kind, 2 * l, n);
      ops.push_back(gamma * both);
      labels.push_back(pair_label(l, kind));
    }
  }
  return {n, std::move(ops), std::move(labels)};
}

KrausFamily build_correlated_swap_model(Complex gamma) {
  OperatorMatrix a1 = gamma * (sigma(Pauli::plus, 1, 2) * sigma(Pauli::minus, 2, 2));
  OperatorMatrix a2 = gamma * (sigma(Pauli::plus, 2, 2) * sigma(Pauli::minus, 1, 2));
  return {2, {a1, a2}, {"A1", "A2"}};
}

KrausFamily complete_family(const KrausFamily& errors, double tol) {
  std::int64_t d = errors.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& op : errors.ops) sum += op.entries.adjoint() * op.entries;
  OperatorMatrix gap(errors.n_qubits, Matrix::Identity(d, d) - sum);
  OperatorMatrix a0(errors.n_qubits, Matrix::Zero(d, d));
  try {
    a0 = hilbert::principal_sqrt_psd(gap, tol);
  } catch (const not_psd_error& e) {
    throw not_psd_error(
        std::string("error operators overshoot the identity (") + e.what() +
            "); shrink the couplings",
        e.min_eigenvalue());
  }
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;
  ops.push_back(std::move(a0));
  labels.emplace_back("A0");
  ops.insert(ops.end(), errors.ops.begin(), errors.ops.end());
  labels.insert(labels.end(), errors.labels.begin(), errors.labels.end());
  return {errors.n_qubits, std::move(ops), std::move(labels)};
}

double check_completeness(const KrausFamily& family) {
  return family.completeness_residual();
}

KrausFamily transform_family(const KrausFamily& family, const MixingUnitary& x) {
  int m = family.size();
  if (x.size() != m) {
    throw std::invalid_argument("mixing size " + std::to_string(x.size()) +
                                " does not match family size " + std::to_string(m));
  }
  std::int64_t d = family.dim();
  std::vector<OperatorMatrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) {
    Matrix acc = Matrix::Zero(d, d);
    for (int a = 0; a < m; ++a) {
      acc += x.x(b, a) * family.ops[static_cast<std::size_t>(a)].entries;
    }
    ops.emplace_back(family.n_qubits, std::move(acc));
  }
  // Keep labels meaningful through pure reorderings; otherwise the
  // mixed operators are new objects and get fresh names.
  std::vector<std::string> labels(static_cast<std::size_t>(m));
  bool is_permutation = true;
  std::vector<int> source(static_cast<std::size_t>(m), -1);
  for (int b = 0; b < m && is_permutation; ++b) {
    for (int a = 0; a < m; ++a) {
      Complex e = x.x(b, a);
      if (std::abs(e) <= 1e-12) continue;
      if (std::abs(e - Complex(1.0, 0.0)) <= 1e-12 && source[static_cast<std::size_t>(b)] < 0) {
        source[static_cast<std::size_t>(b)] = a;
      } else {
        is_permutation = false;
        break;
      }
    }
    if (source[static_cast<std::size_t>(b)] < 0) is_permutation = false;
  }
  for (int b = 0; b < m; ++b) {
    labels[static_cast<std::size_t>(b)] =
        is_permutation ? family.labels[static_cast<std::size_t>(source[static_cast<std::size_t>(b)])]
                       : "B" + std::to_string(b);
  }
  return {family.n_qubits, std::move(ops), std::move(labels)};
}

CanonicalFamily canonicalize_family(const KrausFamily& family, double tol) {
  int m = family.size();
  if (m < 1) throw std::invalid_argument("cannot canonicalize an empty family");
  std::int64_t d = family.dim();
  // Least-squares coefficients with sum_a d_a A_a = I, via the stacked
  // vectorized operators.
  Matrix stacked(d * d, m);
  for (int a = 0; a < m; ++a) {
    stacked.col(a) = Eigen::Map<const Vector>(
        family.ops[static_cast<std::size_t>(a)].entries.data(), d * d);
  }
  Matrix eye = Matrix::Identity(d, d);
  Vector vec_identity = Eigen::Map<const Vector>(eye.data(), d * d);
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector coeffs = svd.solve(vec_identity);
  double residual = (stacked * coeffs - vec_identity).norm() / vec_identity.norm();
  if (residual > tol) {
    throw canonicalization_error(
        "identity is not in the span of the family (relative residual " +
            std::to_string(residual) + ")",
        residual);
  }
  double gamma0 = 1.0 / coeffs.norm();
  Vector first_row = coeffs * gamma0;
  MixingUnitary mixing(hilbert::unitary_completion(first_row));
  KrausFamily rotated = transform_family(family, mixing);
  rotated.labels[0] = "A0";
  return {std::move(rotated), std::move(mixing), gamma0};
}

KrausFamily minimal_family(const KrausFamily& family, double tol) {
  int m = family.size();
  if (m == 0) return family;
  // Hilbert-Schmidt Gram matrix; its kernel is exactly the linear
  // dependence among the operators.
  Matrix gram(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      Complex g = (family.ops[static_cast<std::size_t>(a)].entries.adjoint() *
                   family.ops[static_cast<std::size_t>(b)].entries)
                      .trace();
      gram(a, b) = g;
      gram(b, a) = std::conj(g);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("Gram eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  double lmax = evals.size() > 0 ? evals(evals.size() - 1) : 0.0;
  double threshold = tol * std::max(1.0, lmax);
  int keep = 0;
  for (std::int64_t k = 0; k < evals.size(); ++k) {
    if (evals(k) >= threshold) ++keep;
  }
  if (keep == m) return family;  // already linearly independent

  std::int64_t d = family.dim();
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;
  int out = 0;
  // Walk the kept eigenpairs from largest to smallest eigenvalue.
  for (std::int64_t k = evals.size() - 1; k >= evals.size() - keep; --k) {
    Vector u = solver.eigenvectors().col(k);
    // Phase-fix so the dominant coefficient is real positive; any
    // per-operator phase leaves the channel unchanged.
    std::int64_t imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    Complex lead = u(imax);
    u *= std::conj(lead) / std::abs(lead);
    Matrix acc = Matrix::Zero(d, d);
    for (int a = 0; a < m; ++a) {
      acc += std::conj(u(a)) * family.ops[static_cast<std::size_t>(a)].entries;
    }
    ops.emplace_back(family.n_qubits, std::move(acc));
    labels.push_back("B" + std::to_string(out++));
  }
  return {family.n_qubits, std::move(ops), std::move(labels)};
}

}  // namespace qcav::noise
