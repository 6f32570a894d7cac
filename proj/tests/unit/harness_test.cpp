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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vqite/harness.hpp"

namespace vqite {
namespace {

RunConfig small_config() {
  RunConfig c;
  c.model.num_sites = 4;
  c.step.tau_final = 1.0;
  c.snapshots = {0.5, 1.0};
  c.threads = 1;
  return c;
}

std::string csv(const TrajectoryRecord& r) {
  std::ostringstream os;
  write_trajectory_csv(os, r, "h");
  return os.str();
}

TEST(Trajectory, NoiselessInvariants) {
  const auto rec = run_trajectory(small_config(), 1);
  ASSERT_FALSE(rec.aborted);
  ASSERT_GT(rec.rows.size(), 10u);
  EXPECT_DOUBLE_EQ(rec.rows.front().tau, 0.0);
  EXPECT_DOUBLE_EQ(rec.rows.back().tau, 1.0);
  for (std::size_t i = 1; i < rec.rows.size(); ++i) {
    const auto& a = rec.rows[i - 1];
    const auto& b = rec.rows[i];
    EXPECT_GT(b.tau, a.tau);
    EXPECT_NEAR(b.tau - a.tau, a.dt, 1e-12);
    EXPECT_LE(b.energy, a.energy + 1e-9);
    EXPECT_GE(b.infidelity, 0.0);
    EXPECT_LE(b.infidelity, 1.0);
    EXPECT_NEAR(b.energy, b.e_z + b.e_x, 1e-12);
    EXPECT_EQ(b.shots_used, 0);
  }
}

TEST(Trajectory, NoiselessConvergenceAtSixSites) {
  RunConfig c;
  const auto tik = run_trajectory(c, 1);
  EXPECT_LT(tik.rows.back().infidelity, 1e-2);
  c.regularization = {RegularizationMethod::EigenCut, 1e-2};
  const auto cut = run_trajectory(c, 1);
  EXPECT_GT(cut.rows.back().infidelity, 1e-1);
}

TEST(Trajectory, SampledIsDeterministicAndAccountsShots) {
  RunConfig c = small_config();
  c.noise = NoiseMode::Sampled;
  c.shots = 500;
  c.r = 0.4;
  const Experiment exp(c);
  const auto a = exp.run(7);
  const auto b = exp.run(7);
  const auto other = exp.run(8);
  EXPECT_EQ(csv(a), csv(b));
  EXPECT_NE(csv(a), csv(other));
  const auto count = static_cast<std::int64_t>(enumerate_measurements(exp.ansatz()).size());
  for (std::size_t i = 0; i + 1 < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].shots_used, 500 * count);
  }
}

TEST(Trajectory, InfiniteBudgetMatchesNoiseless) {
  RunConfig c = small_config();
  const auto exact = run_trajectory(c, 1);
  c.noise = NoiseMode::Sampled;
  c.sampler = SamplerKind::Gaussian;
  // The deviation shrinks like one over the square root of the budget.
  double prev = 0.0;
  for (std::int64_t shots : {100000000LL, 10000000000LL, 1000000000000LL}) {
    c.shots = shots;
    const auto sampled = run_trajectory(c, 1);
    const double diff = std::abs(sampled.rows.back().infidelity - exact.rows.back().infidelity);
    if (prev > 0.0) {
      EXPECT_GT(prev / diff, 5.0);
      EXPECT_LT(prev / diff, 20.0);
    }
    prev = diff;
  }
  EXPECT_LT(prev, 2e-5);
}

TEST(Trajectory, AllocationDumpHasOneBlockPerStep) {
  RunConfig c = small_config();
  c.step.tau_final = 0.1;
  c.snapshots = {0.1};
  c.noise = NoiseMode::Sampled;
  c.r = 0.5;
  c.shots = 1000;
  const Experiment exp(c);
  std::ostringstream log;
  const auto rec = exp.run(3, &log);
  const auto count = enumerate_measurements(exp.ansatz()).size();
  std::size_t lines = 0;
  std::string line;
  std::istringstream is(log.str());
  while (std::getline(is, line)) ++lines;
  // The initial uniform plan plus one plan after every step.
  EXPECT_EQ(lines, count * rec.rows.size());
}

TEST(Summary, SingleRunHasZeroError) {
  const auto rec = run_trajectory(small_config(), 1);
  const auto s = summarize({rec}, tau_grid(1.0, 0.05));
  ASSERT_EQ(s.rows.size(), 21u);
  EXPECT_EQ(s.completed, 1);
  for (const auto& r : s.rows) EXPECT_EQ(r.stderr_infidelity, 0.0);
  EXPECT_DOUBLE_EQ(s.rows.back().mean_infidelity, rec.rows.back().infidelity);
}

TEST(Summary, InterpolationAndStandardError) {
  TrajectoryRecord a, b, bad;
  a.rows = {{0.0, 0.5, -1, 0, 0, 0.4}, {0.5, 0.5, -2, 0, 0, 0.2}, {1.0, 0, -3, 0, 0, 0.0}};
  b.rows = {{0.0, 1.0, -1, 0, 0, 0.6}, {1.0, 0, -1, 0, 0, 0.2}};
  bad.aborted = true;
  bad.rows = a.rows;
  const auto s = summarize({a, b, bad}, {0.25, 1.0});
  EXPECT_EQ(s.completed, 2);
  EXPECT_EQ(s.aborted, 1);
  // At 0.25: a -> 0.3, b -> 0.5.
  EXPECT_NEAR(s.rows[0].mean_infidelity, 0.4, 1e-15);
  EXPECT_NEAR(s.rows[0].stderr_infidelity, std::sqrt(0.02) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.rows[0].mean_energy, -1.25, 1e-15);
  EXPECT_NEAR(s.rows[1].mean_infidelity, 0.1, 1e-15);
}

TEST(Summary, Grid) {
  const auto g = tau_grid(5.5, 0.05);
  EXPECT_EQ(g.size(), 111u);
  EXPECT_DOUBLE_EQ(g.back(), 5.5);
  const auto odd = tau_grid(0.12, 0.05);
  EXPECT_EQ(odd, (std::vector<double>{0.0, 0.05, 0.1, 0.12}));
}

TEST(Ensemble, WritesFilesDeterministically) {
  RunConfig c = small_config();
  c.noise = NoiseMode::Sampled;
  c.shots = 200;
  c.runs = 3;
  c.step.tau_final = 0.3;
  c.snapshots = {0.3};
  c.dump_allocation = true;
  c.r = 0.5;
  const auto dir = std::filesystem::temp_directory_path() / "vqite_harness_test";
  std::filesystem::remove_all(dir);
  c.out = (dir / "a").string();
  const auto first = run_ensemble(c);
  c.out = (dir / "b").string();
  const auto second = run_ensemble(c);
  EXPECT_EQ(first.summary.completed, 3);
  for (const char* name : {"run_0000.csv", "run_0002.csv", "summary.csv", "allocation_0001.csv"}) {
    std::ifstream fa(dir / "a" / name), fb(dir / "b" / name);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_FALSE(sa.str().empty()) << name;
    EXPECT_EQ(sa.str(), sb.str()) << name;
    EXPECT_EQ(sa.str().rfind("# config_hash=" + config_hash(c), 0), 0u) << name;
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "a" / "plot.gp"));
  EXPECT_NE(csv(first.runs[0]), csv(first.runs[1]));
  std::filesystem::remove_all(dir);
}

TEST(Sweeps, ROneColumnMatchesUniformEnsemble) {
  RunConfig c = small_config();
  c.noise = NoiseMode::Sampled;
  c.shots = 300;
  c.runs = 2;
  c.step.tau_final = 0.2;
  c.snapshots = {0.2};
  const auto table = sweep_r(c, {0.5, 1.0, 0.0});
  ASSERT_EQ(table.size(), 3u);
  const auto uniform = run_ensemble(c);
  EXPECT_DOUBLE_EQ(table[1].mean_infidelity, uniform.summary.rows.back().mean_infidelity);
  EXPECT_FALSE(table[2].feasible);

  const auto shots = sweep_shots(c, {100, 1000});
  ASSERT_EQ(shots.size(), 3u);
  EXPECT_TRUE(shots[2].allocated);
  EXPECT_DOUBLE_EQ(shots[2].r, c.compare_r);
}

TEST(Structure, ReportAtFourSites) {
  const auto report = verify_structure({4}, 5, 1);
  ASSERT_EQ(report.checks.size(), 5u);
  EXPECT_TRUE(report.checks[0].passed);  // anti-parallel YY / ZZ
  EXPECT_TRUE(report.checks[2].passed);  // vanishing XX column
  EXPECT_TRUE(report.checks[4].passed);  // reduced ansatz nonsingular
  std::ostringstream os;
  write_structure_report(os, report);
  EXPECT_NE(os.str().find("dependency sets"), std::string::npos);
}

}  // namespace
}  // namespace vqite
