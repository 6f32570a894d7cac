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

#include "vqite/allocator.hpp"
#include "vqite/ansatz.hpp"

namespace {

std::vector<double> random_weights(std::size_t count) {
  std::mt19937_64 rng(17);
  std::lognormal_distribution<double> w(0.0, 2.0);
  std::vector<double> p(count);
  for (auto& x : p) x = w(rng);
  return p;
}

void BM_AllocateShots(benchmark::State& state) {
  const auto p = random_weights(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqite::make_shot_plan(p, 10000, 0.4));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllocateShots)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

void BM_RawJacobian(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(3);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
  const Eigen::MatrixXd inverse = (a * a.transpose() + Eigen::MatrixXd::Identity(n, n)).inverse();
  const Eigen::VectorXd thetadot = Eigen::VectorXd::Random(n);
  const Eigen::VectorXd b = Eigen::VectorXd::Random(n);
  const auto ids = vqite::enumerate_measurements(
      vqite::build_default_ansatz(static_cast<int>((n + 7) / 5), 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqite::raw_jacobian_thetadot(inverse, thetadot, b, ids));
  }
}
BENCHMARK(BM_RawJacobian)->Arg(13)->Arg(23)->Arg(33)->Unit(benchmark::kMicrosecond);

}  // namespace
