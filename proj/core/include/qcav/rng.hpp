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

#include <cstdint>
#include <random>

#include "qcav/types.hpp"

namespace qcav {

// Deterministic random source.  Seeding, stream splitting and the
// mapping from raw 64-bit draws to doubles are all pinned down here so
// that a (seed, trial index) pair reproduces bit-identical results
// across runs and platforms; std::uniform_real_distribution and friends
// are deliberately avoided because their draw sequences are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; generates in pairs.
  double gaussian();

  // (gaussian + i*gaussian) / sqrt(2): standard complex normal.
  Complex complex_gaussian();

  // Index in [0, n) with rejection sampling (unbiased).
  std::int64_t below(std::int64_t n);

  // Independent generator for sub-stream `stream` of this generator's
  // base seed.  The base seed is hashed before the stream offset is
  // applied so that nearby base seeds do not share sub-streams.
  Rng fork(std::uint64_t stream) const;

  std::uint64_t base_seed() const { return base_seed_; }

 private:
  std::uint64_t base_seed_;
  std::mt19937_64 engine_;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

// Haar-uniform unit vector of the given dimension.
Vector random_unit_vector(int dim, Rng& rng);

// Haar-uniform unitary via QR of a complex Gaussian matrix with the
// diagonal-phase correction.
Matrix random_unitary(int dim, Rng& rng);

// First `cols` columns of a Haar-uniform unitary (an isometry frame).
Matrix random_isometry(int rows, int cols, Rng& rng);

// Complex Gaussian matrix with iid standard entries.
Matrix random_gaussian_matrix(int rows, int cols, Rng& rng);

}  // namespace qcav
