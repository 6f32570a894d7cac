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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "vqite/ansatz.hpp"
#include "vqite/config.hpp"
#include "vqite/tfim.hpp"

namespace vqite {

/// One CSV row. The state quantities refer to parameters at `tau`; `dt`,
/// the eigenvalue range and `shots_used` belong to the step taken from there.
struct TrajectoryRow {
  double tau = 0.0;
  double dt = 0.0;
  double energy = 0.0;
  double e_z = 0.0;
  double e_x = 0.0;
  double infidelity = 0.0;
  double l2 = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::int64_t shots_used = 0;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<TrajectoryRow> rows;
  ParameterVector final_theta;
  bool aborted = false;
  std::string error;
};

inline constexpr const char* kTrajectoryHeader =
    "tau,dt,energy,e_z,e_x,infidelity,l2,lambda_min,lambda_max,shots_used";

/// Precomputed pieces shared by every trajectory of one configuration.
class Experiment {
 public:
  explicit Experiment(RunConfig config);

  const RunConfig& config() const { return config_; }
  const AnsatzSpec& ansatz() const { return ansatz_; }
  const GroundState& ground_state() const { return ground_; }
  const ParameterVector& initial_theta() const { return theta0_; }

  /// Deterministic in (config, seed). When `allocation_log` is given, every
  /// chosen shot plan is appended to it.
  TrajectoryRecord run(std::uint64_t seed, std::ostream* allocation_log = nullptr) const;

  double infidelity(const StateVector& state) const;

 private:
  RunConfig config_;
  AnsatzSpec ansatz_;
  GroundState ground_;
  ParameterVector theta0_;
};

TrajectoryRecord run_trajectory(const RunConfig& config, std::uint64_t seed);

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record,
                          const std::string& hash);

struct SummaryRow {
  double tau = 0.0;
  double mean_infidelity = 0.0;
  double stderr_infidelity = 0.0;
  double mean_energy = 0.0;
  int runs = 0;
};

struct EnsembleSummary {
  std::vector<SummaryRow> rows;
  int completed = 0;
  int aborted = 0;
};

struct EnsembleResult {
  EnsembleSummary summary;
  std::vector<TrajectoryRecord> runs;
};

/// Linear interpolation of a completed record at `tau` (clamped to its range).
double interpolate_infidelity(const TrajectoryRecord& record, double tau);
double interpolate_energy(const TrajectoryRecord& record, double tau);

/// Mean and standard error (sample sd / sqrt(runs)) of the non-aborted
/// records at each `tau`.
EnsembleSummary summarize(const std::vector<TrajectoryRecord>& records,
                          const std::vector<double>& taus);

/// 0, step, 2 step, ... with tau_final appended when not already on the grid.
std::vector<double> tau_grid(double tau_final, double step);

/// Runs seeds seed, seed+1, ..., seed+runs-1 on `config.threads` workers.
/// When `config.out` is set, writes run_NNNN.csv, summary.csv and plot.gp
/// there (and allocation dumps when requested).
EnsembleResult run_ensemble(const RunConfig& config);

void write_summary_csv(std::ostream& os, const EnsembleSummary& summary,
                       const std::string& hash);

struct SweepRRow {
  double r = 0.0;
  double tau = 0.0;
  double mean_infidelity = 0.0;
  double stderr_infidelity = 0.0;
  int runs = 0;
  bool feasible = true;
};

/// One ensemble per r, reported at `config.snapshots`.
std::vector<SweepRRow> sweep_r(const RunConfig& config, const std::vector<double>& r_values);

struct SweepShotsRow {
  std::int64_t shots = 0;
  double r = 1.0;
  bool allocated = false;
  double mean_infidelity = 0.0;
  double stderr_infidelity = 0.0;
  int runs = 0;
};

/// Uniform ensembles for every budget, then the allocated comparison point
/// (config.compare_shots, config.compare_r), all reported at tau_final.
std::vector<SweepShotsRow> sweep_shots(const RunConfig& config,
                                       const std::vector<std::int64_t>& shot_values);

void write_sweep_r_csv(std::ostream& os, const std::vector<SweepRRow>& rows,
                       const std::string& hash);
void write_sweep_shots_csv(std::ostream& os, const std::vector<SweepShotsRow>& rows,
                           const std::string& hash);

struct StructureCheck {
  int num_qubits = 0;
  std::string claim;
  bool passed = false;
  double worst = 0.0;  // largest violation over the samples
  std::string detail;
};

struct StructureReport {
  std::vector<StructureCheck> checks;
  /// Per size: the generators carrying the null space of M before removal.
  std::vector<std::string> dependency_sets;
  /// True when every null direction is explained by the relations that hold,
  /// and the reduced ansatz has a nonsingular M at every sample.
  bool dependencies_documented = false;

  bool all_claims_hold() const;
};

/// Checks, before removal: YY/ZZ columns of the last bond anti-parallel,
/// X_{N-1}Y_{N-2} parallel to X_N, zero X_N X_{N-1} column, and the null-space
/// dimension; after removal: smallest eigenvalue of M above `tolerance`.
StructureReport verify_structure(const std::vector<int>& sizes, int samples,
                                 std::uint64_t seed, double tolerance = 1e-10,
                                 const TfimParams& model = {});

void write_structure_report(std::ostream& os, const StructureReport& report);

/// Gnuplot recipe for the CSV files of an ensemble directory.
void write_plot_script(std::ostream& os, const std::string& summary_file);

}  // namespace vqite
