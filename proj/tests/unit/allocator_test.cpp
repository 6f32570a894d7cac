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

#include <algorithm>
#include <numeric>
#include <random>

#include "derivative_checks.hpp"
#include "vqite/allocator.hpp"
#include "vqite/errors.hpp"

namespace vqite {
namespace {

std::int64_t sum(const std::vector<std::int64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

TEST(JacobianV, Examples) {
  EXPECT_EQ(jacobian_thetadot_wrt_V(Eigen::MatrixXd::Identity(3, 3)),
            Eigen::MatrixXd::Identity(3, 3));
  const Eigen::MatrixXd m = Eigen::Vector2d(2.0, 4.0).asDiagonal();
  const auto s = solve_thetadot(m, Eigen::Vector2d(1, 1), {RegularizationMethod::EigenCut, 1e-9});
  EXPECT_LT((jacobian_thetadot_wrt_V(s.inverse) -
             Eigen::MatrixXd(Eigen::Vector2d(0.5, 0.25).asDiagonal()))
                .norm(),
            1e-15);
}

TEST(JacobianM, ZeroVelocityAndDiagonal) {
  const Eigen::MatrixXd inv = Eigen::Matrix2d{{2.0, 0.3}, {0.3, 1.0}};
  const ThetaDotMJacobian zero(inv, Eigen::Vector2d::Zero());
  EXPECT_EQ(zero.column(0, 1), Eigen::Vector2d::Zero());
  const Eigen::Vector2d td(0.7, -1.1);
  const ThetaDotMJacobian j(inv, td);
  for (Eigen::Index mu = 0; mu < 2; ++mu) {
    EXPECT_DOUBLE_EQ(j(1, 1, mu), -2.0 * inv(mu, 1) * td(1));
  }
  EXPECT_THROW(ThetaDotMJacobian(inv, Eigen::Vector3d::Zero()), DimensionError);
}

TEST(Derivatives, FiniteDifferenceOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10; ++i) {
    const auto inst = oracle::random_instance(rng);
    const auto e = oracle::check_derivatives(inst);
    EXPECT_LT(e.thetadot_v, 1e-5);
    EXPECT_LT(e.thetadot_m, 1e-5);
    EXPECT_LT(e.l2_v, 1e-5);
    EXPECT_LT(e.l2_m, 1e-5);
    EXPECT_LT(e.thetadot_raw, 1e-5);
    EXPECT_LT(e.l2_raw, 1e-5);
  }
}

TEST(ChainToRaw, AgreesWithDirectJacobianRows) {
  std::mt19937_64 rng(7);
  const auto inst = oracle::random_instance(rng);
  const auto& ids = inst.exact.ids;
  const auto n = static_cast<Eigen::Index>(inst.spec.num_parameters());
  const auto base = assemble_eom(ids, inst.exact.values, n);
  const auto sol = solve_thetadot(base.eom.M, base.eom.V, inst.policy);
  const Eigen::MatrixXd jac = raw_jacobian_thetadot(sol.inverse, sol.thetadot, base.b, ids);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    // Per-entry derivative of thetadot_mu: -Minv_{mu a} thetadot_b.
    const Eigen::MatrixXd dm = -sol.inverse.row(mu).transpose() * sol.thetadot.transpose();
    const auto row = chain_to_raw(dm, sol.inverse.row(mu).transpose(), base.b, ids);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      EXPECT_NEAR(row[k], jac(mu, static_cast<Eigen::Index>(k)), 1e-12);
    }
  }
}

TEST(ChainToRaw, ZeroChannels) {
  std::mt19937_64 rng(8);
  const auto inst = oracle::random_instance(rng);
  const auto& ids = inst.exact.ids;
  const auto n = static_cast<Eigen::Index>(inst.spec.num_parameters());
  Eigen::MatrixXd dm = Eigen::MatrixXd::Random(n, n);
  const auto no_v = chain_to_raw(dm, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n), ids);
  const auto no_b = chain_to_raw(dm, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n), ids);
  for (const auto& id : ids) {
    if (id.kind == MeasurementKind::Energy) {
      EXPECT_EQ(no_v[id.index], 0.0);
    }
    if (id.kind == MeasurementKind::O) {
      EXPECT_EQ(no_b[id.index], 0.0);
    }
  }
}

TEST(Weights, IdentityMetricEnergyChannels) {
  std::mt19937_64 rng(9);
  const auto inst = oracle::random_instance(rng);
  const auto& ids = inst.exact.ids;
  const auto n = static_cast<Eigen::Index>(inst.spec.num_parameters());
  WeightInputs in;
  in.ids = &ids;
  std::vector<double> var(ids.size(), 0.0);
  in.variances = &var;
  in.inverse = Eigen::MatrixXd::Identity(n, n);
  in.thetadot = Eigen::VectorXd::Zero(n);
  in.b = Eigen::VectorXd::Zero(n);
  for (auto kind : {CostKind::ThetaDot, CostKind::McLachlan}) {
    for (double p : compute_weights(kind, in)) EXPECT_EQ(p, 0.0);
  }
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (auto& v : var) v = u(rng);
  const auto p = compute_weights(CostKind::ThetaDot, in);
  for (const auto& id : ids) {
    if (id.kind == MeasurementKind::Energy) {
      // Unit Jacobian times the shift-rule factor 1/2.
      EXPECT_NEAR(p[id.index], 0.5 * std::sqrt(var[id.index]), 1e-15);
    }
  }
  in.sd = Eigen::MatrixXcd::Identity(n, n);
  const auto pw = compute_weights(CostKind::Wavefunction, in);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(pw[k], p[k], 1e-14);
  in.sd.resize(0, 0);
  EXPECT_THROW(compute_weights(CostKind::Wavefunction, in), DimensionError);
  in.sd = -Eigen::MatrixXcd::Identity(n, n);
  EXPECT_THROW(compute_weights(CostKind::Wavefunction, in), NumericalError);
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = 0.5 * static_cast<double>(i + j);
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const Eigen::Map<const Eigen::VectorXd> x(ra.data(), static_cast<Eigen::Index>(ra.size()));
  const Eigen::Map<const Eigen::VectorXd> y(rb.data(), static_cast<Eigen::Index>(rb.size()));
  const Eigen::VectorXd xc = x.array() - x.mean();
  const Eigen::VectorXd yc = y.array() - y.mean();
  return xc.dot(yc) / (xc.norm() * yc.norm());
}

// Rank agreement of the two state-space costs along the late part of a
// noiseless trajectory.
TEST(Weights, WavefunctionAndThetaDotRankAgreeLate) {
  const int n = 6;
  const TfimParams params{n, 1.0, 1.0};
  const auto spec = build_default_ansatz(n, 1);
  const RegularizationPolicy policy;
  const StepControl control;
  ParameterVector theta = initial_parameters(spec.num_parameters(), InitMode::Uniform, 0.01, 1);
  double tau = 0.0;
  int snapshots = 0;
  double worst = 1.0;
  while (snapshots < 20) {
    const EomData eom = compute_eom(spec, theta, params, false);
    const Solution sol = solve_thetadot(eom.M, eom.V, policy);
    const Step step = advance(theta, sol.thetadot, control);
    if (tau > 3.0 && static_cast<int>(tau / 0.1) != static_cast<int>((tau + step.dt) / 0.1)) {
      const auto ex = exact_measurements(spec, theta, params);
      WeightInputs in;
      in.ids = &ex.ids;
      in.variances = &ex.variances;
      in.inverse = sol.inverse;
      in.thetadot = sol.thetadot;
      in.b = eom.O.imag();
      const auto pt = compute_weights(CostKind::ThetaDot, in);
      in.sd = compute_sd(spec, step.theta);
      const auto pw = compute_weights(CostKind::Wavefunction, in);
      worst = std::min(worst, spearman(pt, pw));
      ++snapshots;
    }
    theta = step.theta;
    tau += step.dt;
  }
  EXPECT_GT(worst, 0.9);
}

TEST(Allocation, HandTrace) {
  EXPECT_EQ(allocate_shots({1.0, 2.0, 7.0}, 20, 100), (std::vector<std::int64_t>{20, 20, 60}));
  const auto cont = allocate_shots_sorted({1.0, 2.0, 7.0}, 20.0, 100.0);
  EXPECT_DOUBLE_EQ(cont[0], 20.0);
  EXPECT_DOUBLE_EQ(cont[1], 20.0);
  EXPECT_DOUBLE_EQ(cont[2], 60.0);
  // Unsorted input is mapped back to its own order.
  EXPECT_EQ(allocate_shots({7.0, 1.0, 2.0}, 20, 100), (std::vector<std::int64_t>{60, 20, 20}));
}

TEST(Allocation, UniformCases) {
  EXPECT_EQ(allocate_shots({3.0, 3.0, 3.0, 3.0}, 1, 400),
            (std::vector<std::int64_t>{100, 100, 100, 100}));
  EXPECT_EQ(allocate_shots({0.0, 0.0, 0.0}, 1, 30), (std::vector<std::int64_t>{10, 10, 10}));
  const auto plan = make_shot_plan({0.1, 5.0, 0.0, 2.0}, 1000, 1.0);
  EXPECT_EQ(plan.shots, (std::vector<std::int64_t>{1000, 1000, 1000, 1000}));
  EXPECT_EQ(plan.minimum, 1000);
  EXPECT_EQ(plan.total, 4000);
}

TEST(Allocation, Errors) {
  EXPECT_THROW(allocate_shots({1.0, 2.0}, 60, 100), ConfigError);
  EXPECT_THROW(allocate_shots({1.0, 2.0}, 0, 100), ConfigError);
  EXPECT_THROW(allocate_shots({1.0, -2.0}, 1, 100), ConfigError);
  EXPECT_THROW(make_shot_plan({1.0}, 100, 0.0), ConfigError);
  EXPECT_THROW(make_shot_plan({1.0}, 100, 1.5), ConfigError);
}

TEST(Allocation, RandomInvariants) {
  std::mt19937_64 rng(11);
  std::lognormal_distribution<double> w(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<double> p(n);
    for (auto& x : p) x = (rng() % 7 == 0) ? 0.0 : w(rng);
    if (rng() % 5 == 0 && n > 1) p[1] = p[0];  // ties
    const std::int64_t average = 1 + static_cast<std::int64_t>(rng() % 5000);
    const double r = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    const auto plan = make_shot_plan(p, average, r);
    ASSERT_EQ(sum(plan.shots), average * static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_GE(plan.shots[i], plan.minimum);
      for (std::size_t j = 0; j < n; ++j) {
        if (p[i] < p[j]) {
          ASSERT_LE(plan.shots[i], plan.shots[j]);
        } else if (p[i] == p[j]) {
          ASSERT_LE(std::abs(plan.shots[i] - plan.shots[j]), 1);
        }
      }
    }
  }
}

// The continuous solution minimises sum p^2 / M over M >= M_min with a fixed
// budget; compare against random feasible allocations.
TEST(Allocation, ContinuousOptimalityAgainstRandomSearch) {
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 2 + trial;
    std::vector<double> p(n);
    for (auto& x : p) x = e(rng);
    std::sort(p.begin(), p.end());
    const double minimum = 10.0, total = 100.0 * static_cast<double>(n);
    auto cost = [&](const std::vector<double>& m) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += p[i] * p[i] / m[i];
      return c;
    };
    const double best = cost(allocate_shots_sorted(p, minimum, total));
    const double spare = total - minimum * static_cast<double>(n);
    std::vector<double> m(n);
    for (int k = 0; k < 200000; ++k) {
      double s = 0.0;
      for (auto& x : m) s += (x = e(rng));
      for (auto& x : m) x = minimum + spare * x / s;
      ASSERT_GE(cost(m), best - 1e-12);
    }
  }
}

TEST(Allocation, SmallMinimumStarvesSomeCircuits) {
  std::vector<double> p(100, 1.0);
  p[0] = 1e-4;
  p[1] = 1e-3;
  const auto plan = make_shot_plan(p, 10000, 1e-4);
  EXPECT_LT(plan.shots[0], 10);
  EXPECT_GE(plan.shots[0], 1);
}

}  // namespace
}  // namespace vqite
