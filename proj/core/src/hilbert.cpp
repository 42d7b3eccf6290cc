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

#include "qcav/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qcav {
namespace {

void check_register_size(int n_qubits, std::int64_t size, const char* what) {
  std::int64_t dim = checked_dimension(n_qubits);
  if (size != dim) {
    throw std::invalid_argument(std::string(what) + ": size " +
                                std::to_string(size) + " does not match 2^" +
                                std::to_string(n_qubits));
  }
}

}  // namespace

StateVector::StateVector(int n, Vector amps) : n_qubits(n), amplitudes(std::move(amps)) {
  check_register_size(n, amplitudes.size(), "StateVector");
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n <= 0.0) throw std::invalid_argument("cannot normalize a zero state");
  return {n_qubits, amplitudes / n};
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("inner product of mismatched registers");
  }
  return a.amplitudes.dot(b.amplitudes);
}

OperatorMatrix::OperatorMatrix(int n, Matrix m) : n_qubits(n), entries(std::move(m)) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("operator matrix must be square");
  }
  check_register_size(n, entries.rows(), "OperatorMatrix");
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("operator product on mismatched registers");
  }
  return {a.n_qubits, a.entries * b.entries};
}

StateVector operator*(const OperatorMatrix& a, const StateVector& v) {
  if (a.n_qubits != v.n_qubits) {
    throw std::invalid_argument("operator applied to mismatched register");
  }
  return {a.n_qubits, a.entries * v.amplitudes};
}

OperatorMatrix operator*(Complex scale, const OperatorMatrix& a) {
  return {a.n_qubits, scale * a.entries};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("operator sum on mismatched registers");
  }
  return {a.n_qubits, a.entries + b.entries};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("operator difference on mismatched registers");
  }
  return {a.n_qubits, a.entries - b.entries};
}

Subspace::Subspace(int n_qubits, Matrix basis) : n_qubits_(n_qubits), basis_(std::move(basis)) {
  check_register_size(n_qubits, basis_.rows(), "Subspace");
  if (basis_.cols() > basis_.rows()) {
    throw std::invalid_argument("subspace dimension exceeds ambient dimension");
  }
  if (basis_.cols() > 0) {
    Matrix gram = basis_.adjoint() * basis_;
    double err = max_abs(Matrix(gram - Matrix::Identity(gram.rows(), gram.cols())));
    if (err > 1e-10) {
      throw std::invalid_argument("subspace basis not orthonormal (residual " +
                                  std::to_string(err) + ")");
    }
  }
}

StateVector Subspace::basis_vector(int i) const {
  if (i < 0 || i >= dim()) throw std::invalid_argument("basis index out of range");
  return {n_qubits_, basis_.col(i)};
}

Matrix Subspace::projector() const {
  if (basis_.cols() == 0) {
    return Matrix::Zero(basis_.rows(), basis_.rows());
  }
  return basis_ * basis_.adjoint();
}

double Subspace::residual(const StateVector& v) const {
  if (v.n_qubits != n_qubits_) {
    throw std::invalid_argument("membership test on mismatched register");
  }
  Vector inside = basis_.cols() == 0
                      ? Vector(Vector::Zero(v.amplitudes.size()))
                      : Vector(basis_ * (basis_.adjoint() * v.amplitudes));
  return (v.amplitudes - inside).norm();
}

bool Subspace::contains(const StateVector& v, double tol) const {
  return residual(v) <= tol * std::max(1.0, v.norm());
}

namespace hilbert {

StateVector basis_state(int n_qubits, std::int64_t index) {
  std::int64_t dim = checked_dimension(n_qubits);
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(n_qubits) +
                                " qubits");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return {n_qubits, std::move(v)};
}

OperatorMatrix identity_op(int n_qubits) {
  std::int64_t dim = checked_dimension(n_qubits);
  return {n_qubits, Matrix::Identity(dim, dim)};
}

OperatorMatrix zero_op(int n_qubits) {
  std::int64_t dim = checked_dimension(n_qubits);
  return {n_qubits, Matrix::Zero(dim, dim)};
}

Subspace full_space(int n_qubits) {
  std::int64_t dim = checked_dimension(n_qubits);
  return {n_qubits, Matrix::Identity(dim, dim)};
}

OperatorMatrix tensor_product(const std::vector<OperatorMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor product of nothing");
  int total = 0;
  for (const auto& f : factors) total += f.n_qubits;
  checked_dimension(total);
  Matrix acc = factors.front().entries;
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Matrix& b = factors[k].entries;
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (std::int64_t i = 0; i < acc.rows(); ++i) {
      for (std::int64_t j = 0; j < acc.cols(); ++j) {
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
      }
    }
    acc = std::move(next);
  }
  return {total, std::move(acc)};
}

StateVector tensor_product(const std::vector<StateVector>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor product of nothing");
  int total = 0;
  for (const auto& f : factors) total += f.n_qubits;
  checked_dimension(total);
  Vector acc = factors.front().amplitudes;
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Vector& b = factors[k].amplitudes;
    Vector next(acc.size() * b.size());
    for (std::int64_t i = 0; i < acc.size(); ++i) {
      next.segment(i * b.size(), b.size()) = acc(i) * b;
    }
    acc = std::move(next);
  }
  return {total, std::move(acc)};
}

Matrix kernel_basis(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(m.cols(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax <= 0.0) {
    // Zero matrix: the whole domain is the kernel.
    return Matrix::Identity(m.cols(), m.cols());
  }
  std::int64_t rank = 0;
  for (std::int64_t i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * smax) ++rank;
  }
  std::int64_t nullity = m.cols() - rank;
  return svd.matrixV().rightCols(nullity);
}

Subspace kernel(const OperatorMatrix& op, double tol) {
  return {op.n_qubits, kernel_basis(op.entries, tol)};
}

std::vector<Eigenspace> eigenspaces(const OperatorMatrix& op, double tol) {
  Eigen::ComplexEigenSolver<Matrix> solver(op.entries, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eigenvalue iteration failed to converge");
  }
  const Vector& raw = solver.eigenvalues();
  std::int64_t n = raw.size();
  double scale = tol * std::max(1.0, max_abs(op.entries));

  // Cluster eigenvalues by union-find so near-degenerate values are
  // reported once with their full geometric eigenspace.
  std::vector<std::int64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int64_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (std::abs(raw(i) - raw(j)) <= scale) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<std::int64_t>> clusters;
  std::vector<std::int64_t> root_of(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<std::int64_t>(clusters.size());
      clusters.emplace_back();
    }
    clusters[root_of[r]].push_back(i);
  }

  std::vector<Eigenspace> result;
  for (const auto& members : clusters) {
    Complex mean = 0.0;
    for (std::int64_t i : members) mean += raw(i);
    mean /= static_cast<double>(members.size());
    Matrix shifted = op.entries - mean * Matrix::Identity(n, n);
    Matrix basis = kernel_basis(shifted, tol);
    if (basis.cols() == 0) continue;  // defensive: cluster mean drifted
    result.push_back({mean, Subspace(op.n_qubits, std::move(basis))});
  }
  std::sort(result.begin(), result.end(), [](const Eigenspace& a, const Eigenspace& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) {
      return a.eigenvalue.real() > b.eigenvalue.real();
    }
    return a.eigenvalue.imag() > b.eigenvalue.imag();
  });
  return result;
}

OperatorMatrix principal_sqrt_psd(const OperatorMatrix& op, double tol) {
  double scale = std::max(1.0, max_abs(op.entries));
  if (max_abs(Matrix(op.entries - op.entries.adjoint())) > tol * scale) {
    throw std::invalid_argument("principal square root needs a Hermitian input");
  }
  Matrix herm = 0.5 * (op.entries + op.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("Hermitian eigendecomposition failed");
  }
  Eigen::VectorXd evals = solver.eigenvalues();
  double lmax = std::max(1.0, evals.size() > 0 ? evals.maxCoeff() : 0.0);
  double floor = -tol * lmax;
  for (std::int64_t i = 0; i < evals.size(); ++i) {
    if (evals(i) < floor) {
      throw not_psd_error("matrix is not positive semidefinite (eigenvalue " +
                              std::to_string(evals(i)) + ")",
                          evals(i));
    }
    if (evals(i) < 0.0) evals(i) = 0.0;
  }
  Matrix root = solver.eigenvectors() *
                evals.cwiseSqrt().asDiagonal() *
                solver.eigenvectors().adjoint();
  return {op.n_qubits, std::move(root)};
}

Matrix unitary_completion(const Vector& first_row) {
  std::int64_t n = first_row.size();
  if (n < 1) throw std::invalid_argument("empty row");
  double norm = first_row.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("first row must be a unit vector (norm " +
                                std::to_string(norm) + ")");
  }
  // Build columns of W = U^dagger: the first column is conj(row), then
  // standard basis vectors that survive Gram-Schmidt.
  Matrix w(n, n);
  w.col(0) = first_row.conjugate();
  std::int64_t have = 1;
  for (std::int64_t k = 0; k < n && have < n; ++k) {
    Vector v = Vector::Zero(n);
    v(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::int64_t j = 0; j < have; ++j) {
        v -= w.col(j).dot(v) * w.col(j);
      }
    }
    double r = v.norm();
    if (r > 1e-6) {
      w.col(have++) = v / r;
    }
  }
  if (have < n) {
    throw numerical_error("unitary completion ran out of candidates");
  }
  return w.adjoint();
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("intersection of mismatched registers");
  }
  std::int64_t dim = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) {
    return {a.n_qubits(), Matrix(dim, 0)};
  }
  Matrix stacked(2 * dim, dim);
  stacked.topRows(dim) = Matrix::Identity(dim, dim) - a.projector();
  stacked.bottomRows(dim) = Matrix::Identity(dim, dim) - b.projector();
  // The stacked matrix annihilates exactly the vectors inside both
  // ranges.  Its singular values are bounded by 2, so the relative
  // kernel threshold needs no extra scaling.
  Matrix basis = kernel_basis(stacked, tol);
  return {a.n_qubits(), std::move(basis)};
}

Matrix orthonormal_columns(const Matrix& cols, double tol) {
  Matrix kept(cols.rows(), cols.cols());
  std::int64_t have = 0;
  for (std::int64_t k = 0; k < cols.cols(); ++k) {
    Vector v = cols.col(k);
    double original = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::int64_t j = 0; j < have; ++j) {
        v -= kept.col(j).dot(v) * kept.col(j);
      }
    }
    double r = v.norm();
    if (r >= tol * std::max(1.0, original)) {
      kept.col(have++) = v / r;
    }
  }
  return kept.leftCols(have);
}

Subspace orthonormalize(const std::vector<StateVector>& vectors, double tol) {
  if (vectors.empty()) {
    throw std::invalid_argument("orthonormalize needs at least one vector");
  }
  int n = vectors.front().n_qubits;
  Matrix cols(vectors.front().dim(), static_cast<std::int64_t>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].n_qubits != n) {
      throw std::invalid_argument("orthonormalize needs a uniform register width");
    }
    cols.col(static_cast<std::int64_t>(k)) = vectors[k].amplitudes;
  }
  return {n, orthonormal_columns(cols, tol)};
}

}  // namespace hilbert
}  // namespace qcav
