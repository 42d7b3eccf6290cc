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

#include <benchmark/benchmark.h>

#include <vector>

#include "qcav/analysis.hpp"
#include "qcav/channel.hpp"
#include "qcav/codes.hpp"
#include "qcav/hilbert.hpp"
#include "qcav/noise.hpp"
#include "qcav/rng.hpp"
#include "qcav/types.hpp"

namespace {

using namespace qcav;
using noise::KrausFamily;
using noise::PairGammas;

KrausFamily completed_pair_family() {
  return noise::complete_family(
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}}));
}

void bm_tensor_product(benchmark::State& state) {
  int factors = static_cast<int>(state.range(0));
  std::vector<OperatorMatrix> ops(static_cast<std::size_t>(factors),
                                  noise::sigma(noise::Pauli::z, 1, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert::tensor_product(ops));
  }
}
BENCHMARK(bm_tensor_product)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void bm_apply_channel(benchmark::State& state) {
  KrausFamily family = completed_pair_family();
  Rng rng(1);
  channel::DensityMatrix rho = channel::DensityMatrix::pure(
      StateVector(4, random_unit_vector(16, rng)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::apply_channel(rho, family));
  }
}
BENCHMARK(bm_apply_channel)->Unit(benchmark::kMicrosecond);

void bm_gamma_matrix(benchmark::State& state) {
  KrausFamily family = completed_pair_family();
  Subspace code = codes::four_qubit_code_space();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::gamma_matrix(code, family));
  }
}
BENCHMARK(bm_gamma_matrix)->Unit(benchmark::kMicrosecond);

void bm_classify(benchmark::State& state) {
  KrausFamily family = completed_pair_family();
  Subspace code = codes::four_qubit_code_space();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::classify(code, family));
  }
}
BENCHMARK(bm_classify)->Unit(benchmark::kMicrosecond);

void bm_joint_eigenspace(benchmark::State& state) {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{1.0, 1.0, 1.0}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::find_joint_eigenspace(errors.ops));
  }
}
BENCHMARK(bm_joint_eigenspace)->Unit(benchmark::kMillisecond);

void bm_code_fidelity(benchmark::State& state) {
  KrausFamily family = completed_pair_family();
  Subspace code = codes::four_qubit_code_space();
  channel::FidelityOptions options;
  options.multistarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::code_fidelity(code, family, options));
  }
}
BENCHMARK(bm_code_fidelity)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

void bm_encode_general_parity(benchmark::State& state) {
  Rng rng(2);
  StateVector logical(3, random_unit_vector(8, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(codes::encode_general_parity(logical));
  }
}
BENCHMARK(bm_encode_general_parity)->Unit(benchmark::kMicrosecond);

void bm_syndrome_roundtrip(benchmark::State& state) {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  Rng rng(3);
  StateVector input(1, random_unit_vector(2, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(codes::roundtrip_inject(
        input, errors, "A1+", codes::RecoveryScheme::four_qubit, 7));
  }
}
BENCHMARK(bm_syndrome_roundtrip)->Unit(benchmark::kMicrosecond);

void bm_monte_carlo(benchmark::State& state) {
  KrausFamily family = completed_pair_family();
  StateVector input = hilbert::basis_state(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(codes::roundtrip_monte_carlo(
        input, family, codes::RecoveryScheme::four_qubit, 100, 42));
  }
}
BENCHMARK(bm_monte_carlo)->Unit(benchmark::kMillisecond);

void bm_search_trial(benchmark::State& state) {
  KrausFamily errors =
      noise::build_pairwise_model(2, {PairGammas{0.1, 0.1, 0.1}});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::search_random_code(errors, 2, 1, seed++));
  }
}
BENCHMARK(bm_search_trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
