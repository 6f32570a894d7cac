// Copyright 2026 The vqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "vqite/ansatz.hpp"
#include "vqite/eom.hpp"
#include "vqite/pauli_state.hpp"
#include "vqite/shot_model.hpp"

namespace {

vqite::ParameterVector random_theta(std::size_t count) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  vqite::ParameterVector theta(count);
  for (auto& t : theta) t = u(rng);
  return theta;
}

void BM_ApplyRotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::string letters(static_cast<std::size_t>(n), 'I');
  letters[0] = 'X';
  letters[1] = 'Y';
  const vqite::PauliString p(letters);
  auto psi = vqite::StateVector::plus_state(n);
  for (auto _ : state) {
    vqite::apply_rotation_inplace(psi, p, 0.1);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ApplyRotation)->DenseRange(4, 16, 4);

void BM_PrepareState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = vqite::build_default_ansatz(n, 1);
  const auto theta = random_theta(spec.num_parameters());
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqite::prepare_state(spec, theta));
  }
}
BENCHMARK(BM_PrepareState)->Arg(4)->Arg(6)->Arg(8);

void BM_ComputeEom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = vqite::build_default_ansatz(n, 1);
  const auto theta = random_theta(spec.num_parameters());
  const vqite::TfimParams params{n, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqite::compute_eom(spec, theta, params, false));
  }
}
BENCHMARK(BM_ComputeEom)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_MeasureEom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = vqite::build_default_ansatz(n, 1);
  const auto theta = random_theta(spec.num_parameters());
  const vqite::TfimParams params{n, 1.0, 1.0};
  const auto plan = vqite::ShotPlan::uniform(vqite::enumerate_measurements(spec).size(), 10000);
  vqite::Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqite::measure_eom(spec, theta, params, plan, rng));
  }
}
BENCHMARK(BM_MeasureEom)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
