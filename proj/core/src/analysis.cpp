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

#include "qcav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qcav/errors.hpp"

namespace qcav::analysis {
namespace {

// Eigenvalue candidates of op restricted to a subspace.  Computed
// eigenvalues of defective operators scatter around the true value
// (classically by eps^(1/k) for a size-k Jordan block), so candidates
// are cluster means at two radii - fine for resolving close eigenvalues
// and coarse for collapsing that scatter - each polished by a Rayleigh
// step on the smallest singular direction.
std::vector<Complex> eigenvalue_candidates(const Matrix& op,
                                           const Subspace& where,
                                           double tol) {
  Matrix compressed = where.basis().adjoint() * (op * where.basis());
  Eigen::ComplexEigenSolver<Matrix> solver(compressed, false);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eigenvalue iteration failed to converge");
  }
  Vector raw = solver.eigenvalues();
  double scale = std::max(1.0, max_abs(op));

  auto cluster_means = [&](double radius) {
    std::vector<Complex> means;
    std::vector<bool> used(static_cast<std::size_t>(raw.size()), false);
    for (std::int64_t i = 0; i < raw.size(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Complex sum = 0.0;
      int count = 0;
      for (std::int64_t j = i; j < raw.size(); ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        if (std::abs(raw(j) - raw(i)) <= radius) {
          used[static_cast<std::size_t>(j)] = true;
          sum += raw(j);
          ++count;
        }
      }
      means.push_back(sum / static_cast<double>(count));
    }
    return means;
  };

  std::vector<Complex> candidates = cluster_means(tol * scale);
  for (Complex c : cluster_means(1e-4 * scale)) candidates.push_back(c);

  // Rayleigh polish: move each candidate onto the nearby exact
  // eigenvalue using the smallest singular direction of (op - c I).
  std::int64_t n = op.rows();
  std::vector<Complex> polished;
  for (Complex c : candidates) {
    Complex lambda = c;
    for (int it = 0; it < 2; ++it) {
      Matrix shifted = op - lambda * Matrix::Identity(n, n);
      Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
      Vector v = svd.matrixV().col(n - 1);
      lambda = v.dot(op * v);
    }
    polished.push_back(lambda);
  }
  // Deduplicate within the fine radius.
  std::vector<Complex> unique;
  for (Complex c : polished) {
    bool seen = false;
    for (Complex u : unique) {
      if (std::abs(c - u) <= tol * scale) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(c);
  }
  return unique;
}

struct Branch {
  std::vector<Complex> eigenvalues;
  Subspace space;
};

}  // namespace

GammaMatrix gamma_matrix(const CodeSubspace& code,
                         const noise::KrausFamily& family, double tol) {
  if (code.n_qubits() != family.n_qubits) {
    throw std::invalid_argument("code register does not match family");
  }
  if (code.dim() < 1) throw std::invalid_argument("code space is empty");
  const int m = family.size();
  const int d = code.dim();

  // Blocks T_ab = (A_a B)^H (A_b B); the Knill-Laflamme condition says
  // each is a scalar matrix, with the scalars forming the gamma matrix.
  std::vector<Matrix> compressed(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    compressed[static_cast<std::size_t>(a)] =
        family.ops[static_cast<std::size_t>(a)].entries * code.basis();
  }

  GammaMatrix result;
  result.entries = Matrix::Zero(m, m);
  double worst = 0.0;
  KlViolation worst_violation;
  double entry_scale = 0.0;
  std::vector<Matrix> blocks(static_cast<std::size_t>(m * m));
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      Matrix t = compressed[static_cast<std::size_t>(a)].adjoint() *
                 compressed[static_cast<std::size_t>(b)];
      entry_scale = std::max(entry_scale, max_abs(t));
      blocks[static_cast<std::size_t>(a * m + b)] = std::move(t);
    }
  }
  double threshold_scale = std::max(1.0, entry_scale);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const Matrix& t = blocks[static_cast<std::size_t>(a * m + b)];
      Complex mean = t.trace() / static_cast<double>(d);
      result.entries(a, b) = mean;
      result.entries(b, a) = std::conj(mean);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double dev = (i == j) ? std::abs(t(i, j) - mean) : std::abs(t(i, j));
          if (dev > worst) {
            worst = dev;
            worst_violation = {a, b, i, j, dev};
          }
        }
      }
    }
  }
  result.kl_satisfied = worst <= tol * threshold_scale;
  if (!result.kl_satisfied) result.violation = worst_violation;

  result.entries = 0.5 * (result.entries + result.entries.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(result.entries);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("gamma matrix eigendecomposition failed");
  }
  result.eigenvalues = solver.eigenvalues().reverse();
  double lmax = result.eigenvalues.size() > 0 ? result.eigenvalues(0) : 0.0;
  double rank_threshold = tol * std::max(1.0, lmax);
  result.rank = 0;
  for (std::int64_t k = 0; k < result.eigenvalues.size(); ++k) {
    // The gamma matrix is PSD whenever the condition holds; clamp the
    // rounding-level negatives.
    if (result.eigenvalues(k) < 0.0 &&
        result.eigenvalues(k) >= -1e-10 * std::max(1.0, lmax)) {
      result.eigenvalues(k) = 0.0;
    }
    if (result.eigenvalues(k) >= rank_threshold) ++result.rank;
  }
  return result;
}

std::string to_string(CodeClass c) {
  switch (c) {
    case CodeClass::not_correctable: return "not-correctable";
    case CodeClass::avoiding: return "error-avoiding";
    case CodeClass::nondegenerate: return "nondegenerate";
    case CodeClass::degenerate: return "degenerate";
  }
  return "?";
}

CodeClassification classify(const CodeSubspace& code,
                            const noise::KrausFamily& family, double tol) {
  CodeClassification result;
  result.gamma = gamma_matrix(code, family, tol);
  const int m = family.size();
  if (!result.gamma.kl_satisfied) {
    result.code_class = CodeClass::not_correctable;
    return result;
  }
  if (result.gamma.rank <= 1) {
    result.code_class = CodeClass::avoiding;
    result.qeac_eigenvalues.assign(static_cast<std::size_t>(m), Complex(0.0, 0.0));
    if (result.gamma.rank == 1) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(result.gamma.entries);
      Vector u = solver.eigenvectors().col(m - 1);  // largest eigenvalue
      double lambda = solver.eigenvalues()(m - 1);
      Vector gamma = std::sqrt(std::max(lambda, 0.0)) * u.conjugate();
      // Global phase: first significant scalar real positive.
      for (int a = 0; a < m; ++a) {
        if (std::abs(gamma(a)) > 1e-12) {
          gamma *= std::conj(gamma(a)) / std::abs(gamma(a));
          break;
        }
      }
      for (int a = 0; a < m; ++a) result.qeac_eigenvalues[static_cast<std::size_t>(a)] = gamma(a);
    }
  } else if (result.gamma.rank == m) {
    result.code_class = CodeClass::nondegenerate;
  } else {
    result.code_class = CodeClass::degenerate;
  }
  return result;
}

std::optional<std::vector<Complex>> qeac_scalar_action(
    const CodeSubspace& code, const noise::KrausFamily& family, double tol) {
  if (code.n_qubits() != family.n_qubits) {
    throw std::invalid_argument("code register does not match family");
  }
  if (code.dim() < 1) throw std::invalid_argument("code space is empty");
  const Matrix& basis = code.basis();
  Vector probe = basis.col(0);
  std::vector<Complex> scalars;
  scalars.reserve(family.ops.size());
  for (const auto& op : family.ops) {
    Complex candidate = probe.dot(op.entries * probe);
    Matrix residual = op.entries * basis - candidate * basis;
    double scale = std::max(1.0, max_abs(op.entries));
    double worst = 0.0;
    for (std::int64_t c = 0; c < residual.cols(); ++c) {
      worst = std::max(worst, residual.col(c).norm());
    }
    if (worst > tol * scale) return std::nullopt;
    scalars.push_back(candidate);
  }
  return scalars;
}

bool qeac_gamma_factorizes(const CodeSubspace& code,
                           const noise::KrausFamily& family, double tol) {
  GammaMatrix g = gamma_matrix(code, family, tol);
  if (!g.kl_satisfied) return false;
  const int m = family.size();
  if (m == 0) return true;
  double scale = std::max(1.0, max_abs(g.entries));
  if (max_abs(g.entries) <= tol * scale) return true;  // zero matrix: gamma = 0
  Eigen::SelfAdjointEigenSolver<Matrix> solver(g.entries);
  double lambda = solver.eigenvalues()(m - 1);
  Vector u = solver.eigenvectors().col(m - 1);
  Matrix rank_one = lambda * (u * u.adjoint());
  return max_abs(Matrix(g.entries - rank_one)) <= tol * scale;
}

std::vector<JointEigenspaceResult> find_joint_eigenspace(
    const std::vector<OperatorMatrix>& operators, double tol) {
  if (operators.empty()) {
    throw std::invalid_argument("joint eigenspace of an empty operator list");
  }
  int n = operators.front().n_qubits;
  for (const auto& op : operators) {
    if (op.n_qubits != n) {
      throw std::invalid_argument("operators on mismatched registers");
    }
  }
  std::int64_t dim = checked_dimension(n);

  std::vector<Branch> branches;
  branches.push_back({{}, hilbert::full_space(n)});

  for (const auto& op : operators) {
    double scale = std::max(1.0, max_abs(op.entries));
    std::vector<Branch> next;
    for (const Branch& branch : branches) {
      std::vector<Complex> candidates =
          eigenvalue_candidates(op.entries, branch.space, tol);
      for (Complex lambda : candidates) {
        OperatorMatrix shifted(
            n, op.entries - lambda * Matrix::Identity(dim, dim));
        Subspace eigenspace = hilbert::kernel(shifted, tol);
        if (eigenspace.dim() == 0) continue;
        Subspace refined =
            hilbert::subspace_intersect(branch.space, eigenspace, tol);
        if (refined.dim() == 0) continue;
        Vector v = refined.basis().col(0);
        Complex exact = v.dot(op.entries * v);  // Rayleigh-refined
        std::vector<Complex> tuple = branch.eigenvalues;
        tuple.push_back(exact);
        next.push_back({std::move(tuple), std::move(refined)});
      }
    }
    // Merge branches that reached the same eigenvalue tuple through
    // different candidates.
    std::vector<Branch> merged;
    for (Branch& b : next) {
      bool absorbed = false;
      for (Branch& m : merged) {
        bool same = true;
        for (std::size_t k = 0; k < b.eigenvalues.size(); ++k) {
          if (std::abs(b.eigenvalues[k] - m.eigenvalues[k]) > tol * scale) {
            same = false;
            break;
          }
        }
        if (same) {
          Matrix joined(dim, m.space.dim() + b.space.dim());
          joined.leftCols(m.space.dim()) = m.space.basis();
          joined.rightCols(b.space.dim()) = b.space.basis();
          m.space = Subspace(n, hilbert::orthonormal_columns(joined, tol));
          absorbed = true;
          break;
        }
      }
      if (!absorbed) merged.push_back(std::move(b));
    }
    branches = std::move(merged);
    if (branches.empty()) break;
  }

  // Re-verify every surviving subspace against the unrestricted
  // operators; intersections are exact up to rounding, so this only
  // drops genuinely spurious branches.
  std::vector<JointEigenspaceResult> results;
  for (Branch& branch : branches) {
    bool ok = true;
    for (std::size_t a = 0; a < operators.size() && ok; ++a) {
      const Matrix& op = operators[a].entries;
      double scale = std::max(1.0, max_abs(op));
      Matrix residual =
          op * branch.space.basis() - branch.eigenvalues[a] * branch.space.basis();
      for (std::int64_t c = 0; c < residual.cols(); ++c) {
        if (residual.col(c).norm() > 10.0 * tol * scale) {
          ok = false;
          break;
        }
      }
    }
    if (ok) results.push_back({std::move(branch.eigenvalues), std::move(branch.space)});
  }
  std::sort(results.begin(), results.end(),
            [](const JointEigenspaceResult& a, const JointEigenspaceResult& b) {
              if (a.space.dim() != b.space.dim()) {
                return a.space.dim() > b.space.dim();
              }
              for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) {
                double ar = a.eigenvalues[k].real(), br = b.eigenvalues[k].real();
                if (ar != br) return ar > br;
                double ai = a.eigenvalues[k].imag(), bi = b.eigenvalues[k].imag();
                if (ai != bi) return ai > bi;
              }
              return false;
            });
  return results;
}

namespace {

// Knill-Laflamme residual machinery for the randomized search: the
// objective is the squared Frobenius deviation of every compressed
// block from a scalar matrix.
struct SearchObjective {
  std::vector<Matrix> products;  // M_ab = A_a^H A_b for a <= b, row-major in (a,b)
  std::vector<std::pair<int, int>> index;
  int m = 0;

  explicit SearchObjective(const noise::KrausFamily& family) {
    m = family.size();
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b) {
        products.push_back(family.ops[static_cast<std::size_t>(a)].entries.adjoint() *
                           family.ops[static_cast<std::size_t>(b)].entries);
        index.emplace_back(a, b);
      }
    }
  }

  // f(B) and its Euclidean gradient.  Off-diagonal pairs enter twice
  // ((a,b) and (b,a) give conjugate-transposed deviations).
  double value_and_gradient(const Matrix& basis, Matrix* gradient) const {
    const std::int64_t dim = basis.rows();
    const int code_dim = static_cast<int>(basis.cols());
    double f = 0.0;
    if (gradient) *gradient = Matrix::Zero(dim, code_dim);
    for (std::size_t k = 0; k < products.size(); ++k) {
      const Matrix& mab = products[k];
      Matrix t = basis.adjoint() * (mab * basis);
      Complex mean = t.trace() / static_cast<double>(code_dim);
      Matrix dev = t - mean * Matrix::Identity(code_dim, code_dim);
      double weight = index[k].first == index[k].second ? 1.0 : 2.0;
      f += weight * dev.squaredNorm();
      if (gradient) {
        *gradient += weight * (mab * (basis * dev.adjoint()) +
                               mab.adjoint() * (basis * dev));
      }
    }
    return f;
  }
};

Matrix stiefel_retract(const Matrix& b) {
  Eigen::HouseholderQR<Matrix> qr(b);
  Matrix q = qr.householderQ() * Matrix::Identity(b.rows(), b.cols());
  Matrix r = qr.matrixQR().topRows(b.cols()).triangularView<Eigen::Upper>();
  for (std::int64_t j = 0; j < q.cols(); ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

// Local refinement for near-solutions.  Gradient descent approaches the
// (typically non-isolated) zero set only sublinearly, so once a trial is
// close we switch to damped Gauss-Newton on the stacked residual
//   [ sqrt(w_ab) vec(B^H M_ab B - mean * I) ; vec(B^H B - I) ],
// solved in ambient coordinates with a minimum-norm least-squares step.
// Returns the objective value at the retracted refined basis.
double gauss_newton_polish(const SearchObjective& objective, Matrix& basis,
                           double target) {
  const std::int64_t n = basis.rows();
  const int code_dim = static_cast<int>(basis.cols());
  const std::size_t blocks = objective.products.size();
  const int block_reals = 2 * code_dim * code_dim;
  const int rows = static_cast<int>(blocks + 1) * block_reals;
  const int cols = static_cast<int>(2 * n * code_dim);

  auto pack = [&](const Matrix& block, double weight, Eigen::VectorXd& out,
                  int& pos) {
    for (int j = 0; j < code_dim; ++j) {
      for (int i = 0; i < code_dim; ++i) {
        out(pos++) = weight * block(i, j).real();
        out(pos++) = weight * block(i, j).imag();
      }
    }
  };

  auto residual = [&](const Matrix& b, Eigen::VectorXd& r) {
    r.resize(rows);
    int pos = 0;
    for (std::size_t k = 0; k < blocks; ++k) {
      Matrix t = b.adjoint() * (objective.products[k] * b);
      Complex mean = t.trace() / static_cast<double>(code_dim);
      Matrix dev = t - mean * Matrix::Identity(code_dim, code_dim);
      double weight =
          objective.index[k].first == objective.index[k].second ? 1.0 : 2.0;
      pack(dev, std::sqrt(weight), r, pos);
    }
    Matrix orth = b.adjoint() * b - Matrix::Identity(code_dim, code_dim);
    pack(orth, 1.0, r, pos);
    return r.squaredNorm();
  };

  auto jacobian = [&](const Matrix& b, Eigen::MatrixXd& jac) {
    std::vector<Matrix> left(blocks), right(blocks);
    for (std::size_t k = 0; k < blocks; ++k) {
      left[k] = objective.products[k] * b;        // n x code_dim
      right[k] = b.adjoint() * objective.products[k];  // code_dim x n
    }
    jac.resize(rows, cols);
    Eigen::VectorXd column(rows);
    Matrix dev(code_dim, code_dim);
    int c = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (int j = 0; j < code_dim; ++j) {
        for (int part = 0; part < 2; ++part) {
          Complex z = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
          int pos = 0;
          for (std::size_t k = 0; k < blocks; ++k) {
            dev.setZero();
            dev.row(j) += std::conj(z) * left[k].row(i);
            dev.col(j) += z * right[k].col(i);
            dev -= (dev.trace() / static_cast<double>(code_dim)) *
                   Matrix::Identity(code_dim, code_dim);
            double weight = objective.index[k].first == objective.index[k].second
                                ? 1.0
                                : 2.0;
            pack(dev, std::sqrt(weight), column, pos);
          }
          dev.setZero();
          dev.row(j) += std::conj(z) * b.row(i);
          dev.col(j) += z * b.adjoint().col(i);
          pack(dev, 1.0, column, pos);
          jac.col(c++) = column;
        }
      }
    }
  };

  Eigen::VectorXd r;
  double rn2 = residual(basis, r);
  Eigen::MatrixXd jac;
  for (int it = 0; it < 30 && rn2 > 0.01 * target; ++it) {
    jacobian(basis, jac);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
    Eigen::VectorXd delta = cod.solve(-r);
    Matrix direction(n, code_dim);
    int c = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (int j = 0; j < code_dim; ++j) {
        direction(i, j) = Complex(delta(c), delta(c + 1));
        c += 2;
      }
    }
    bool moved = false;
    double alpha = 1.0;
    for (int bt = 0; bt < 25; ++bt) {
      Matrix candidate = basis + alpha * direction;
      Eigen::VectorXd rc;
      double rc2 = residual(candidate, rc);
      if (rc2 < rn2) {
        basis = std::move(candidate);
        r = std::move(rc);
        rn2 = rc2;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  basis = stiefel_retract(basis);
  return objective.value_and_gradient(basis, nullptr);
}

}  // namespace

CodeSearchReport search_random_code(const noise::KrausFamily& family,
                                    int code_dim, int trials,
                                    std::uint64_t seed, double tol) {
  if (family.size() < 1) throw std::invalid_argument("empty family");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::int64_t dim = family.dim();
  if (code_dim < 1 || code_dim > dim) {
    throw std::invalid_argument("code dimension out of range");
  }

  SearchObjective objective(family);
  Rng base(seed);

  CodeSearchReport report;
  report.seed = seed;
  report.best_residual = std::numeric_limits<double>::infinity();

  const double target = tol * tol;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(static_cast<std::uint64_t>(trial));
    Matrix basis = random_isometry(static_cast<int>(dim), code_dim, rng);
    Matrix gradient;
    double f = objective.value_and_gradient(basis, &gradient);
    double step = 1.0;
    double stale_reference = f;
    int stale_age = 0;
    const int max_iterations = 400;
    // Gradient descent only has to reach the Gauss-Newton basin; the
    // polish below closes the remaining orders of magnitude.
    const double polish_entry = 1e-6;
    const double polish_basin = 1e-1;
    const int stale_grace = 45;
    for (int iter = 0; iter < max_iterations && f > polish_entry; ++iter) {
      // Project out the normal component (Stiefel tangent space).
      Matrix btg = basis.adjoint() * gradient;
      Matrix tangent = gradient - basis * (0.5 * (btg + btg.adjoint()));
      double gnorm = tangent.norm();
      if (gnorm <= 1e-14) break;
      bool moved = false;
      double trial_step = step;
      for (int bt = 0; bt < 40; ++bt) {
        Matrix candidate = stiefel_retract(basis - trial_step * tangent);
        double fc = objective.value_and_gradient(candidate, nullptr);
        if (fc <= f - 1e-4 * trial_step * gnorm * gnorm) {
          basis = std::move(candidate);
          f = objective.value_and_gradient(basis, &gradient);
          step = std::min(trial_step * 1.5, 1e3);
          moved = true;
          break;
        }
        trial_step *= 0.5;
      }
      if (!moved) break;
      // Give up early on trials plateauing far from any solution.
      if (iter >= stale_grace && ++stale_age >= 15) {
        if (f > polish_basin && f > 0.9 * stale_reference) break;
        stale_reference = f;
        stale_age = 0;
      }
    }
    if (f <= polish_basin && f > target) {
      f = gauss_newton_polish(objective, basis, target);
    }
    report.best_residual = std::min(report.best_residual, std::sqrt(f));
    report.trials_used = trial + 1;
    if (f <= target) {
      report.found_trial = trial;
      report.code = Subspace(family.n_qubits, basis);
      break;
    }
  }
  return report;
}

}  // namespace qcav::analysis
