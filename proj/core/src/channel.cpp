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

#include "qcav/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcav/errors.hpp"

namespace qcav::channel {
namespace {

constexpr double kCompletenessTol = 1e-8;

void require_complete(const noise::KrausFamily& family) {
  double residual = family.completeness_residual();
  if (residual > kCompletenessTol) {
    throw incomplete_family_error(
        "family does not resolve the identity (residual " +
            std::to_string(residual) + "); complete it first",
        residual);
  }
}

// Fidelity quadratic form restricted to a code: f(z) = sum_a |z^H G_a z|^2
// with G_a the compressions of the Kraus operators.
struct CompressedObjective {
  std::vector<Matrix> g;

  double value(const Vector& z) const {
    double f = 0.0;
    for (const Matrix& ga : g) {
      f += std::norm(z.dot(ga * z));
    }
    return f;
  }

  // Euclidean gradient of f at z (direction of steepest ascent under
  // the real inner product Re(u^H v)).
  Vector gradient(const Vector& z) const {
    Vector grad = Vector::Zero(z.size());
    for (const Matrix& ga : g) {
      Vector gz = ga * z;
      Complex val = z.dot(gz);
      grad += 2.0 * (std::conj(val) * gz + val * (ga.adjoint() * z));
    }
    return grad;
  }
};

struct DescentOutcome {
  Vector z;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Projected gradient descent on the unit sphere with Armijo
// backtracking.
DescentOutcome minimize_on_sphere(const CompressedObjective& objective,
                                  Vector start, int max_iterations,
                                  double gradient_tol) {
  DescentOutcome out;
  Vector z = start.normalized();
  double f = objective.value(z);
  double step = 1.0;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    Vector grad = objective.gradient(z);
    Vector tangent = grad - Complex(z.dot(grad).real(), 0.0) * z;
    double gnorm = tangent.norm();
    if (gnorm <= gradient_tol) {
      out.converged = true;
      break;
    }
    bool moved = false;
    double trial_step = step;
    for (int bt = 0; bt < 40; ++bt) {
      Vector candidate = (z - trial_step * tangent).normalized();
      double fc = objective.value(candidate);
      if (fc <= f - 1e-4 * trial_step * gnorm * gnorm) {
        z = candidate;
        f = fc;
        step = std::min(trial_step * 1.5, 1e3);
        moved = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!moved) {
      // No decrease at machine-sized steps: treat as converged.
      out.converged = true;
      break;
    }
  }
  out.z = z;
  out.value = f;
  out.iterations = iter;
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(int n, Matrix m) : n_qubits(n), entries(std::move(m)) {
  std::int64_t dim = checked_dimension(n);
  if (entries.rows() != dim || entries.cols() != dim) {
    throw std::invalid_argument("density matrix size does not match register");
  }
  double scale = std::max(1.0, max_abs(entries));
  if (max_abs(Matrix(entries - entries.adjoint())) > 1e-8 * scale) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(entries.trace() - Complex(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  StateVector unit = psi.normalized();
  return {unit.n_qubits, Matrix(unit.amplitudes * unit.amplitudes.adjoint())};
}

DensityMatrix apply_channel(const DensityMatrix& rho,
                            const noise::KrausFamily& family) {
  if (rho.n_qubits != family.n_qubits) {
    throw std::invalid_argument("channel register does not match state");
  }
  require_complete(family);
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& op : family.ops) {
    out += op.entries * rho.entries * op.entries.adjoint();
  }
  // Symmetrize away the last bits of rounding; the exact map preserves
  // Hermiticity.
  out = 0.5 * (out + out.adjoint()).eval();
  return {rho.n_qubits, std::move(out)};
}

double state_fidelity(const StateVector& psi, const noise::KrausFamily& family) {
  if (psi.n_qubits != family.n_qubits) {
    throw std::invalid_argument("state register does not match family");
  }
  Vector v = psi.normalized().amplitudes;
  double f = 0.0;
  for (const auto& op : family.ops) {
    f += std::norm(v.dot(op.entries * v));
  }
  // The unit upper bound only holds for families resolving the
  // identity; for error-only families the raw sum is the honest value.
  if (family.is_complete(kCompletenessTol)) return std::clamp(f, 0.0, 1.0);
  return std::max(f, 0.0);
}

FidelityResult code_fidelity(const Subspace& code,
                             const noise::KrausFamily& family,
                             const FidelityOptions& options) {
  if (code.n_qubits() != family.n_qubits) {
    throw std::invalid_argument("code register does not match family");
  }
  if (code.dim() < 1) throw std::invalid_argument("code space is empty");

  const bool complete = family.is_complete(kCompletenessTol);
  const int m = code.dim();
  CompressedObjective objective;
  objective.g.reserve(family.ops.size());
  for (const auto& op : family.ops) {
    Matrix w = op.entries * code.basis();
    objective.g.push_back(code.basis().adjoint() * w);
  }

  const auto clamp_value = [complete](double f) {
    return complete ? std::clamp(f, 0.0, 1.0) : std::max(f, 0.0);
  };

  FidelityResult result;
  if (m == 1) {
    Vector z = Vector::Ones(1);
    result.value = clamp_value(objective.value(z));
    result.argmin_state = code.basis_vector(0);
    result.converged = true;
    return result;
  }

  std::vector<Vector> starts;
  for (int i = 0; i < m; ++i) {
    Vector e = Vector::Zero(m);
    e(i) = 1.0;
    starts.push_back(std::move(e));
  }
  if (m == 2 && options.grid_prescan) {
    // Coarse sweep of the logical Bloch sphere; the best cell seeds one
    // descent so equatorial minima are never missed.
    double best_f = std::numeric_limits<double>::infinity();
    Vector best = starts[0];
    const int steps = 64;
    for (int it = 0; it <= steps; ++it) {
      double theta = std::numbers::pi * it / steps;
      for (int ip = 0; ip < steps; ++ip) {
        double phi = 2.0 * std::numbers::pi * ip / steps;
        Vector z(2);
        z << std::cos(theta / 2.0),
            std::polar(std::sin(theta / 2.0), phi);
        double f = objective.value(z);
        if (f < best_f) {
          best_f = f;
          best = z;
        }
      }
    }
    starts.push_back(std::move(best));
  }
  Rng rng(options.seed);
  for (int s = 0; s < options.multistarts; ++s) {
    Rng stream = rng.fork(static_cast<std::uint64_t>(s) + 1);
    starts.push_back(random_unit_vector(m, stream));
  }

  DescentOutcome best;
  best.value = std::numeric_limits<double>::infinity();
  for (const Vector& start : starts) {
    DescentOutcome run = minimize_on_sphere(objective, start,
                                            options.max_iterations,
                                            options.gradient_tol);
    if (run.value < best.value) best = run;
  }

  result.value = clamp_value(best.value);
  result.iterations = best.iterations;
  result.converged = best.converged;
  Vector full = code.basis() * best.z;
  // Deterministic global phase: first significant amplitude real
  // positive.
  for (std::int64_t i = 0; i < full.size(); ++i) {
    if (std::abs(full(i)) > 1e-8) {
      full *= std::conj(full(i)) / std::abs(full(i));
      break;
    }
  }
  result.argmin_state = StateVector(code.n_qubits(), std::move(full));
  return result;
}

double efficiency(int code_dim, int n_qubits) {
  if (code_dim < 1) throw std::invalid_argument("code dimension must be >= 1");
  if (n_qubits < 1) throw std::invalid_argument("register width must be >= 1");
  if (n_qubits < 63 && static_cast<std::int64_t>(code_dim) > (1LL << n_qubits)) {
    throw std::invalid_argument("code dimension exceeds the register");
  }
  return std::log2(static_cast<double>(code_dim)) / n_qubits;
}

}  // namespace qcav::channel
