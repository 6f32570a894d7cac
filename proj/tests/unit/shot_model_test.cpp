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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vqite/errors.hpp"
#include "vqite/shot_model.hpp"

namespace vqite {
namespace {

ParameterVector random_theta(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  ParameterVector t(static_cast<Eigen::Index>(n));
  for (auto& x : t) x = u(rng);
  return t;
}

TEST(Measurements, CountAndCanonicalOrder) {
  const auto spec = build_default_ansatz(6, 1);
  const auto ids = enumerate_measurements(spec);
  EXPECT_EQ(ids.size(), 391u);
  EXPECT_EQ(measurement_count(23), 391u);
  for (std::size_t k = 0; k < ids.size(); ++k) EXPECT_EQ(ids[k].index, k);
  // D block, row-major upper triangle.
  EXPECT_EQ(ids[0].kind, MeasurementKind::D);
  EXPECT_EQ(ids[1].mu, 0);
  EXPECT_EQ(ids[1].nu, 1);
  EXPECT_EQ(ids[23].mu, 1);
  EXPECT_EQ(ids[23].nu, 1);
  EXPECT_EQ(ids[276].kind, MeasurementKind::O);
  EXPECT_EQ(ids[276].mu, 0);
  const auto& e0 = ids[299];
  EXPECT_EQ(e0.kind, MeasurementKind::Energy);
  EXPECT_EQ(e0.shift, Shift::Plus);
  EXPECT_EQ(e0.basis, MeasurementBasis::Z);
  EXPECT_EQ(ids[300].basis, MeasurementBasis::X);
  EXPECT_EQ(ids[301].shift, Shift::Minus);
  EXPECT_EQ(ids[303].mu, 1);
  EXPECT_EQ(ids.back().mu, 22);
}

TEST(Measurements, ExactValuesReproduceEom) {
  const auto spec = build_default_ansatz(4, 1);
  const TfimParams params{4, 1.0, 1.0};
  const auto theta = random_theta(spec.num_parameters(), 4);
  const auto ex = exact_measurements(spec, theta, params);
  const EomData ref = compute_eom(spec, theta, params);
  const auto assembled = assemble_eom(ex.ids, ex.values, 13);
  EXPECT_LT((assembled.eom.M - ref.M).norm(), 1e-12);
  EXPECT_LT((assembled.eom.V - ref.V).norm(), 1e-12);
  EXPECT_LT((assembled.b - ref.O.imag()).norm(), 1e-14);
  for (const auto& id : ex.ids) {
    EXPECT_GE(ex.variances[id.index], 0.0);
    if (id.kind != MeasurementKind::Energy) {
      EXPECT_NEAR(ex.variances[id.index], 1.0 - std::pow(ex.values[id.index], 2), 1e-15);
    }
  }
  EXPECT_NEAR(intrinsic_variance(ex.ids[ex.first_energy + 1], spec, theta, params),
              ex.variances[ex.first_energy + 1], 1e-14);
}

TEST(Sampling, HadamardMomentsMatchBernoulli) {
  Rng rng(123);
  const double value = 0.3;
  const int shots = 50;
  const int draws = 40000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double m = sample_hadamard(value, shots, rng);
    sum += m;
    sum2 += m * m;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  const double want_var = (1.0 - value * value) / shots;
  EXPECT_NEAR(mean, value, 5.0 * std::sqrt(want_var / draws));
  EXPECT_NEAR(var / want_var, 1.0, 0.03);
}

TEST(Sampling, HadamardEdgeCases) {
  Rng rng(1);
  EXPECT_DOUBLE_EQ(sample_hadamard(1.0, 100, rng), 1.0);
  EXPECT_DOUBLE_EQ(sample_hadamard(-1.0, 100, rng), -1.0);
  EXPECT_THROW(sample_hadamard(1.1, 10, rng), NumericalError);
  EXPECT_THROW(sample_hadamard(0.0, 0, rng), ConfigError);
  const double m = sample_hadamard(0.2, 7, rng);
  EXPECT_NEAR(std::fmod(m * 7 + 7, 2.0), 0.0, 1e-12);  // (2k - shots) / shots
}

TEST(Sampling, EnergyMomentsMatchMultinomial) {
  Rng rng(77);
  const std::vector<double> p{0.1, 0.0, 0.6, 0.3};
  const std::vector<double> f{-3.0, 10.0, 1.0, 2.0};
  const double mean = 0.1 * -3.0 + 0.6 * 1.0 + 0.3 * 2.0;
  const double var = 0.1 * 9.0 + 0.6 * 1.0 + 0.3 * 4.0 - mean * mean;
  const int shots = 20;
  const int draws = 40000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double m = sample_energy(p, f, shots, rng);
    sum += m;
    sum2 += m * m;
  }
  const double got_mean = sum / draws;
  EXPECT_NEAR(got_mean, mean, 5.0 * std::sqrt(var / shots / draws));
  EXPECT_NEAR((sum2 / draws - got_mean * got_mean) / (var / shots), 1.0, 0.03);
  EXPECT_THROW(sample_energy(p, {1.0}, 5, rng), DimensionError);
}

TEST(Sampling, GaussianPathHasMatchedVariance) {
  Rng rng(5);
  const int draws = 40000;
  double sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double d = sample_hadamard(0.5, 1000, rng, SamplerKind::Gaussian) - 0.5;
    sum2 += d * d;
  }
  EXPECT_NEAR(sum2 / draws / (0.75 / 1000), 1.0, 0.03);
}

TEST(MeasureEom, InfinitePlanIsExact) {
  const auto spec = build_default_ansatz(4, 1);
  const TfimParams params{4, 1.0, 1.0};
  const auto theta = random_theta(spec.num_parameters(), 8);
  Rng rng(0);
  const auto noisy = measure_eom(spec, theta, params, ShotPlan::infinite(156), rng);
  const EomData ref = compute_eom(spec, theta, params);
  EXPECT_LT((noisy.eom.M - ref.M).norm(), 1e-12);
  EXPECT_LT((noisy.eom.V - ref.V).norm(), 1e-12);
}

TEST(MeasureEom, UnbiasedAndDeterministic) {
  const auto spec = build_default_ansatz(4, 1);
  const TfimParams params{4, 1.0, 1.0};
  const auto theta = random_theta(spec.num_parameters(), 8);
  const auto plan = ShotPlan::uniform(156, 2000);
  EXPECT_EQ(plan.total, 156 * 2000);
  Rng a(42), b(42);
  const auto na = measure_eom(spec, theta, params, plan, a);
  const auto nb = measure_eom(spec, theta, params, plan, b);
  EXPECT_EQ(na.estimates, nb.estimates);

  const EomData ref = compute_eom(spec, theta, params);
  Rng rng(9);
  Eigen::MatrixXd mean_d = Eigen::MatrixXd::Zero(13, 13);
  Eigen::VectorXd mean_v = Eigen::VectorXd::Zero(13);
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    const auto n = measure_eom(spec, theta, params, plan, rng);
    mean_d += n.eom.D.real() / reps;
    mean_v += n.eom.V / reps;
  }
  // Standard error of each entry is at most 1/sqrt(2000 * 200) = 1.6e-3.
  EXPECT_LT((mean_d - ref.D.real()).cwiseAbs().maxCoeff(), 8e-3);
  EXPECT_LT((mean_v - ref.V).cwiseAbs().maxCoeff(), 0.05);
}

TEST(MeasureEom, PlanValidation) {
  const auto spec = build_default_ansatz(4, 1);
  const TfimParams params{4, 1.0, 1.0};
  const auto theta = random_theta(spec.num_parameters(), 8);
  Rng rng(0);
  EXPECT_THROW(measure_eom(spec, theta, params, ShotPlan::uniform(10, 100), rng), ConfigError);
  auto plan = ShotPlan::uniform(156, 100);
  plan.shots[3] = 0;
  EXPECT_THROW(measure_eom(spec, theta, params, plan, rng), ConfigError);
}

TEST(MeasureEom, LabelsAreCsvSafe) {
  const auto ids = enumerate_measurements(build_default_ansatz(3, 1));
  for (const auto& id : ids) EXPECT_EQ(id.label().find(','), std::string::npos);
  EXPECT_EQ(ids[1].label(), "D(0:1)");
}

}  // namespace
}  // namespace vqite
