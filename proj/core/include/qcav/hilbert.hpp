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

#include <vector>

#include "qcav/errors.hpp"
#include "qcav/types.hpp"

namespace qcav {

// Pure state of an n-qubit register.  Qubits are numbered 1..n with
// qubit 1 the most significant bit of the basis index, so |01> on two
// qubits is amplitude index 1.  Amplitudes are not forcibly normalized;
// call normalized() where unit norm is required.
struct StateVector {
  int n_qubits = 0;
  Vector amplitudes;

  StateVector() = default;
  StateVector(int n, Vector amps);

  std::int64_t dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }
  StateVector normalized() const;
};

// <a|b>; dimensions must agree.
Complex inner(const StateVector& a, const StateVector& b);

// Dense operator on an n-qubit register (2^n x 2^n).
struct OperatorMatrix {
  int n_qubits = 0;
  Matrix entries;

  OperatorMatrix() = default;
  OperatorMatrix(int n, Matrix m);

  std::int64_t dim() const { return entries.rows(); }
  OperatorMatrix adjoint() const { return {n_qubits, entries.adjoint()}; }
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector operator*(const OperatorMatrix& a, const StateVector& v);
OperatorMatrix operator*(Complex scale, const OperatorMatrix& a);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);

// Subspace of an n-qubit register, stored as a 2^n x d matrix of
// orthonormal basis columns.  Column order is meaningful: code spaces
// use column i as the image of logical basis state |i>.
class Subspace {
 public:
  Subspace() = default;
  // Validates orthonormality of the columns to within 1e-10.
  Subspace(int n_qubits, Matrix basis);

  int n_qubits() const { return n_qubits_; }
  std::int64_t ambient_dim() const { return basis_.rows(); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  StateVector basis_vector(int i) const;

  // B * B^dagger.
  Matrix projector() const;

  // Norm of the component of v outside the subspace.
  double residual(const StateVector& v) const;
  bool contains(const StateVector& v, double tol = kDefaultTol) const;

 private:
  int n_qubits_ = 0;
  Matrix basis_;  // 2^n x d, orthonormal columns
};

namespace hilbert {

// |index> on n qubits.
StateVector basis_state(int n_qubits, std::int64_t index);
OperatorMatrix identity_op(int n_qubits);
OperatorMatrix zero_op(int n_qubits);
Subspace full_space(int n_qubits);

// Kronecker products, factor for qubit 1 leftmost.  The register widths
// add; the result is checked against the qubit cap.
OperatorMatrix tensor_product(const std::vector<OperatorMatrix>& factors);
StateVector tensor_product(const std::vector<StateVector>& factors);

// One eigenvalue cluster of a general square operator together with an
// orthonormal basis of its geometric eigenspace.
struct Eigenspace {
  Complex eigenvalue;
  Subspace space;
};

// Eigenvalue clusters of a (not necessarily normal) operator.
// Eigenvalues closer than tol * max(1, |op|_max) are merged; each
// cluster's space is the kernel of (op - lambda I), so for defective
// operators the geometric multiplicity is what is reported.  Clusters
// are sorted by descending (Re, Im).
std::vector<Eigenspace> eigenspaces(const OperatorMatrix& op,
                                    double tol = kDefaultTol);

// Null space of op: singular directions with sigma <= tol * sigma_max.
Subspace kernel(const OperatorMatrix& op, double tol = kDefaultTol);

// Null space of a general (possibly rectangular) matrix; columns are an
// orthonormal basis.  Shared workhorse behind kernel() and
// subspace_intersect().
Matrix kernel_basis(const Matrix& m, double tol = kDefaultTol);

// Principal square root of a Hermitian PSD operator.  Eigenvalues in
// [-tol*scale, 0) are clamped to zero; anything lower throws
// not_psd_error.  Throws std::invalid_argument if op is not Hermitian
// within tolerance.
OperatorMatrix principal_sqrt_psd(const OperatorMatrix& op,
                                  double tol = kDefaultTol);

// Unitary whose first ROW is the given unit vector; remaining rows are
// completed deterministically (Gram-Schmidt over standard basis
// candidates).  Throws std::invalid_argument unless |norm - 1| <= 1e-10.
Matrix unitary_completion(const Vector& first_row);

// Intersection of two subspaces of the same register, computed as the
// kernel of the stacked complement projectors.
Subspace subspace_intersect(const Subspace& a, const Subspace& b,
                            double tol = kDefaultTol);

// Orthonormal basis spanning the given vectors (modified Gram-Schmidt
// with re-orthogonalization); vectors whose residual after projection
// is below tol * max(1, |v|) are dropped.  Input must be non-empty and
// of uniform register width.
Subspace orthonormalize(const std::vector<StateVector>& vectors,
                        double tol = kDefaultTol);

// Same, at the matrix level: returns orthonormal columns spanning the
// column space of `cols`.
Matrix orthonormal_columns(const Matrix& cols, double tol = kDefaultTol);

}  // namespace hilbert
}  // namespace qcav
