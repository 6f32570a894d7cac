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

#include "vqite/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "vqite/allocator.hpp"
#include "vqite/eom.hpp"
#include "vqite/errors.hpp"
#include "vqite/shot_model.hpp"
#include "vqite/solver.hpp"

namespace vqite {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::pair<double, double> eigen_range(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

/// Single-shot variances as seen from the data: 1 - m^2 for Hadamard tests,
/// the exact outcome variance for energy circuits.
std::vector<double> estimated_variances(const NoisyEom& noisy) {
  const auto& ex = noisy.exact;
  std::vector<double> var(ex.ids.size());
  for (const auto& id : ex.ids) {
    if (id.kind == MeasurementKind::Energy) {
      var[id.index] = ex.variances[id.index];
    } else {
      const double m = noisy.estimates[id.index];
      var[id.index] = std::max(0.0, 1.0 - m * m);
    }
  }
  return var;
}

template <typename F>
double interpolate(const TrajectoryRecord& record, double tau, F&& field) {
  const auto& rows = record.rows;
  if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (tau <= rows.front().tau) return field(rows.front());
  if (tau >= rows.back().tau) return field(rows.back());
  const auto it = std::lower_bound(rows.begin(), rows.end(), tau,
                                   [](const TrajectoryRow& r, double t) { return r.tau < t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (tau - lo.tau) / (hi.tau - lo.tau);
  return (1.0 - w) * field(lo) + w * field(hi);
}

std::string run_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%04d.csv", index);
  return buf;
}

}  // namespace

Experiment::Experiment(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  ansatz_ = build_default_ansatz(config_.model.num_sites, config_.layers);
  ground_ = exact_ground_state(config_.model);
  theta0_ = initial_parameters(ansatz_.num_parameters(), config_.init_mode, config_.init_scale,
                               config_.init_seed);
}

double Experiment::infidelity(const StateVector& state) const {
  const double f = std::norm(inner(ground_.state, state));
  return std::clamp(1.0 - f, 0.0, 1.0);
}

TrajectoryRecord Experiment::run(std::uint64_t seed, std::ostream* allocation_log) const {
  const auto& cfg = config_;
  const bool sampled = cfg.noise == NoiseMode::Sampled;
  const std::size_t count = enumerate_measurements(ansatz_).size();

  TrajectoryRecord rec;
  rec.seed = seed;
  Rng rng(seed);
  ParameterVector theta = theta0_;
  ShotPlan plan = sampled ? ShotPlan::uniform(count, cfg.shots) : ShotPlan::infinite(count);
  double tau = 0.0;
  int step_index = 0;

  auto fail = [&](const std::string& why, TrajectoryRow row) {
    rec.aborted = true;
    rec.error = why;
    row.dt = 0.0;
    rec.rows.push_back(row);
    rec.final_theta = theta;
    return rec;
  };

  if (allocation_log != nullptr && sampled) {
    const auto ids = enumerate_measurements(ansatz_);
    write_allocation_csv(*allocation_log, ids, std::vector<double>(count, 0.0), plan, 0, 0.0);
  }

  for (;;) {
    const double tau_left = cfg.step.tau_final - tau;
    const bool finished = tau_left <= 1e-12;

    TrajectoryRow row;
    row.tau = tau;
    const StateVector psi = prepare_state(ansatz_, theta);
    row.infidelity = infidelity(psi);
    if (!std::isfinite(row.infidelity)) return fail("non-finite infidelity", row);

    if (finished) {
      const EomData eom = compute_eom(ansatz_, theta, cfg.model, false);
      row.e_z = eom.e_z;
      row.e_x = eom.e_x;
      row.energy = eom.energy();
      row.l2 = eom.l2;
      std::tie(row.lambda_min, row.lambda_max) = eigen_range(eom.M);
      rec.rows.push_back(row);
      break;
    }

    NoisyEom noisy;
    EomData exact;
    if (sampled) {
      noisy = measure_eom(ansatz_, theta, cfg.model, plan, rng, cfg.sampler);
      exact = noisy.exact.eom;
    } else {
      exact = compute_eom(ansatz_, theta, cfg.model, false);
    }
    row.e_z = exact.e_z;
    row.e_x = exact.e_x;
    row.energy = exact.energy();
    row.shots_used = sampled ? plan.total : 0;

    Solution sol;
    try {
      sol = sampled ? solve_thetadot(noisy.eom.M, noisy.eom.V, cfg.regularization)
                    : solve_thetadot(exact.M, exact.V, cfg.regularization);
    } catch (const NumericalError& e) {
      return fail(std::string("solver failure: ") + e.what(), row);
    }
    row.lambda_min = sol.diagnostics.lambda_min;
    row.lambda_max = sol.diagnostics.lambda_max;
    row.l2 = mclachlan_distance(exact, sol.thetadot, exact.var_h);

    Step step;
    try {
      step = advance(theta, sol.thetadot, cfg.step, tau_left);
    } catch (const NumericalError& e) {
      return fail(std::string("step failure: ") + e.what(), row);
    }
    row.dt = step.dt;
    rec.rows.push_back(row);

    if (sampled && cfg.r < 1.0) {
      WeightInputs in;
      std::vector<double> variances;
      in.ids = &noisy.exact.ids;
      ParameterVector theta_next = step.theta;
      if (cfg.weights == WeightSource::Noisy) {
        variances = estimated_variances(noisy);
        in.inverse = sol.inverse;
        in.thetadot = sol.thetadot;
        in.b = noisy.b;
      } else {
        variances = noisy.exact.variances;
        Solution ex_sol;
        try {
          ex_sol = solve_thetadot(exact.M, exact.V, cfg.regularization);
        } catch (const NumericalError& e) {
          return fail(std::string("solver failure: ") + e.what(), row);
        }
        in.inverse = ex_sol.inverse;
        in.thetadot = ex_sol.thetadot;
        in.b = exact.O.imag();
        theta_next = theta + ex_sol.thetadot * step.dt;
      }
      in.variances = &variances;
      if (cfg.cost == CostKind::Wavefunction) in.sd = compute_sd(ansatz_, theta_next);
      std::vector<double> p;
      try {
        p = compute_weights(cfg.cost, in);
      } catch (const NumericalError& e) {
        return fail(std::string("weight failure: ") + e.what(), row);
      }
      plan = make_shot_plan(p, cfg.shots, cfg.r);
      if (allocation_log != nullptr) {
        write_allocation_csv(*allocation_log, noisy.exact.ids, p, plan, step_index + 1,
                             tau + step.dt);
      }
    }

    theta = step.theta;
    tau = step.dt >= tau_left ? cfg.step.tau_final : tau + step.dt;
    ++step_index;
  }
  rec.final_theta = theta;
  return rec;
}

TrajectoryRecord run_trajectory(const RunConfig& config, std::uint64_t seed) {
  return Experiment(config).run(seed);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record,
                          const std::string& hash) {
  os << "# config_hash=" << hash << '\n' << "# seed=" << record.seed << '\n';
  if (record.aborted) os << "# error=" << record.error << '\n';
  os << kTrajectoryHeader << '\n';
  for (const auto& r : record.rows) {
    os << num(r.tau) << ',' << num(r.dt) << ',' << num(r.energy) << ',' << num(r.e_z) << ','
       << num(r.e_x) << ',' << num(r.infidelity) << ',' << num(r.l2) << ','
       << num(r.lambda_min) << ',' << num(r.lambda_max) << ',' << r.shots_used << '\n';
  }
}

double interpolate_infidelity(const TrajectoryRecord& record, double tau) {
  return interpolate(record, tau, [](const TrajectoryRow& r) { return r.infidelity; });
}

double interpolate_energy(const TrajectoryRecord& record, double tau) {
  return interpolate(record, tau, [](const TrajectoryRow& r) { return r.energy; });
}

EnsembleSummary summarize(const std::vector<TrajectoryRecord>& records,
                          const std::vector<double>& taus) {
  EnsembleSummary s;
  std::vector<const TrajectoryRecord*> ok;
  for (const auto& r : records) {
    if (r.aborted || r.rows.empty()) {
      ++s.aborted;
    } else {
      ok.push_back(&r);
    }
  }
  s.completed = static_cast<int>(ok.size());
  for (double tau : taus) {
    SummaryRow row;
    row.tau = tau;
    row.runs = s.completed;
    if (ok.empty()) {
      row.mean_infidelity = row.stderr_infidelity = row.mean_energy =
          std::numeric_limits<double>::quiet_NaN();
      s.rows.push_back(row);
      continue;
    }
    double sum = 0.0, sum_e = 0.0;
    std::vector<double> values;
    values.reserve(ok.size());
    for (const auto* r : ok) {
      values.push_back(interpolate_infidelity(*r, tau));
      sum += values.back();
      sum_e += interpolate_energy(*r, tau);
    }
    const double n = static_cast<double>(ok.size());
    row.mean_infidelity = sum / n;
    row.mean_energy = sum_e / n;
    if (ok.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean_infidelity) * (v - row.mean_infidelity);
      row.stderr_infidelity = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    s.rows.push_back(row);
  }
  return s;
}

std::vector<double> tau_grid(double tau_final, double step) {
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor(tau_final / step + 1e-9));
  for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * step);
  if (tau_final - grid.back() > 1e-9 * std::max(1.0, tau_final)) {
    grid.push_back(tau_final);
  } else {
    grid.back() = tau_final;
  }
  return grid;
}

EnsembleResult run_ensemble(const RunConfig& config) {
  const Experiment experiment(config);
  const std::string hash = config_hash(config);
  const int runs = config.runs;
  const bool write = !config.out.empty();
  if (write) std::filesystem::create_directories(config.out);

  EnsembleResult result;
  result.runs.resize(static_cast<std::size_t>(runs));
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (int i = next++; i < runs; i = next++) {
      try {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
        std::ofstream alloc;
        std::ostream* log = nullptr;
        if (write && config.dump_allocation && config.noise == NoiseMode::Sampled) {
          char name[40];
          std::snprintf(name, sizeof name, "allocation_%04d.csv", i);
          alloc.open(std::filesystem::path(config.out) / name);
          alloc << "# config_hash=" << hash << '\n';
          write_allocation_header(alloc);
          log = &alloc;
        }
        auto rec = experiment.run(seed, log);
        if (write) {
          std::ofstream f(std::filesystem::path(config.out) / run_file_name(i));
          write_trajectory_csv(f, rec, hash);
        }
        result.runs[static_cast<std::size_t>(i)] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, runs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  result.summary = summarize(result.runs, tau_grid(config.step.tau_final, config.grid_step));
  if (result.summary.aborted > 0) {
    std::cerr << "vqite: " << result.summary.aborted << " of " << runs
              << " runs aborted and were excluded from the summary\n";
  }
  if (write) {
    std::ofstream f(std::filesystem::path(config.out) / "summary.csv");
    write_summary_csv(f, result.summary, hash);
    std::ofstream plot(std::filesystem::path(config.out) / "plot.gp");
    write_plot_script(plot, "summary.csv");
  }
  return result;
}

void write_summary_csv(std::ostream& os, const EnsembleSummary& summary,
                       const std::string& hash) {
  os << "# config_hash=" << hash << '\n'
     << "# completed=" << summary.completed << " aborted=" << summary.aborted << '\n'
     << "tau,mean_infidelity,stderr_infidelity,mean_energy,runs\n";
  for (const auto& r : summary.rows) {
    os << num(r.tau) << ',' << num(r.mean_infidelity) << ',' << num(r.stderr_infidelity) << ','
       << num(r.mean_energy) << ',' << r.runs << '\n';
  }
}

std::vector<SweepRRow> sweep_r(const RunConfig& config, const std::vector<double>& r_values) {
  std::vector<SweepRRow> table;
  for (double r : r_values) {
    if (!(r > 0.0 && r <= 1.0)) {
      for (double tau : config.snapshots) {
        SweepRRow row;
        row.r = r;
        row.tau = tau;
        row.feasible = false;
        table.push_back(row);
      }
      continue;
    }
    RunConfig c = config;
    c.noise = NoiseMode::Sampled;
    c.r = r;
    if (!config.out.empty()) {
      char sub[32];
      std::snprintf(sub, sizeof sub, "r_%.4g", r);
      c.out = (std::filesystem::path(config.out) / sub).string();
    }
    const auto res = run_ensemble(c);
    const auto snap = summarize(res.runs, config.snapshots);
    for (const auto& s : snap.rows) {
      table.push_back({r, s.tau, s.mean_infidelity, s.stderr_infidelity, s.runs, true});
    }
  }
  return table;
}

std::vector<SweepShotsRow> sweep_shots(const RunConfig& config,
                                       const std::vector<std::int64_t>& shot_values) {
  std::vector<SweepShotsRow> table;
  auto one = [&](std::int64_t shots, double r, bool allocated) {
    RunConfig c = config;
    c.noise = NoiseMode::Sampled;
    c.shots = shots;
    c.r = r;
    if (!config.out.empty()) {
      const std::string sub =
          (allocated ? "allocated_" : "uniform_") + std::to_string(shots);
      c.out = (std::filesystem::path(config.out) / sub).string();
    }
    const auto res = run_ensemble(c);
    const auto snap = summarize(res.runs, {config.step.tau_final});
    const auto& s = snap.rows.front();
    table.push_back({shots, r, allocated, s.mean_infidelity, s.stderr_infidelity, s.runs});
  };
  for (auto shots : shot_values) one(shots, 1.0, false);
  one(config.compare_shots, config.compare_r, true);
  return table;
}

void write_sweep_r_csv(std::ostream& os, const std::vector<SweepRRow>& rows,
                       const std::string& hash) {
  os << "# config_hash=" << hash << '\n' << "r,tau,mean_infidelity,stderr_infidelity,runs,feasible\n";
  for (const auto& r : rows) {
    os << num(r.r) << ',' << num(r.tau) << ',' << num(r.mean_infidelity) << ','
       << num(r.stderr_infidelity) << ',' << r.runs << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

void write_sweep_shots_csv(std::ostream& os, const std::vector<SweepShotsRow>& rows,
                           const std::string& hash) {
  os << "# config_hash=" << hash << '\n'
     << "shots,r,allocated,mean_infidelity,stderr_infidelity,runs\n";
  for (const auto& r : rows) {
    os << r.shots << ',' << num(r.r) << ',' << (r.allocated ? 1 : 0) << ','
       << num(r.mean_infidelity) << ',' << num(r.stderr_infidelity) << ',' << r.runs << '\n';
  }
}

bool StructureReport::all_claims_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const StructureCheck& c) { return c.passed; });
}

StructureReport verify_structure(const std::vector<int>& sizes, int samples,
                                 std::uint64_t seed, double tolerance,
                                 const TfimParams& model) {
  StructureReport report;
  report.dependencies_documented = true;
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  for (int n : sizes) {
    TfimParams params = model;
    params.num_sites = n;
    const AnsatzSpec full = build_ansatz(n, 1, {});
    const AnsatzSpec reduced = build_default_ansatz(n, 1);
    const auto index_of = [&](const PauliString& p) {
      const auto it = std::find(full.generators.begin(), full.generators.end(), p);
      return static_cast<Eigen::Index>(it - full.generators.begin());
    };
    const auto site = [n](int one_based) { return one_based - 1; };
    const Eigen::Index yy = index_of(PauliString::pair(n, site(n), PauliLetter::Y, site(n - 1), PauliLetter::Y));
    const Eigen::Index zz = index_of(PauliString::pair(n, site(n), PauliLetter::Z, site(n - 1), PauliLetter::Z));
    const Eigen::Index xy = index_of(PauliString::pair(n, site(n - 1), PauliLetter::X, site(n - 2), PauliLetter::Y));
    const Eigen::Index xn = index_of(PauliString::single(n, site(n), PauliLetter::X));
    const Eigen::Index xx = index_of(PauliString::pair(n, site(n), PauliLetter::X, site(n - 1), PauliLetter::X));

    double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0, worst_post = kInfiniteCondition;
    double worst_cond = 0.0;
    int null_min = 1 << 20, null_max = 0;
    Eigen::VectorXd support = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(full.num_parameters()));

    for (int s = 0; s < samples; ++s) {
      ParameterVector theta(static_cast<Eigen::Index>(full.num_parameters()));
      for (auto& t : theta) t = angle(rng);
      const Eigen::MatrixXd m = compute_eom(full, theta, params, false).M;
      const auto cosine = [&](Eigen::Index a, Eigen::Index b) {
        return m.col(a).dot(m.col(b)) / (m.col(a).norm() * m.col(b).norm());
      };
      worst1 = std::max(worst1, std::abs(1.0 + cosine(yy, zz)));
      worst2 = std::max(worst2, std::abs(1.0 - std::abs(cosine(xy, xn))));
      worst3 = std::max(worst3, m.col(xx).norm());

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
      int nulls = 0;
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        if (std::abs(es.eigenvalues()(k)) < 1e-9 * scale) {
          ++nulls;
          support += es.eigenvectors().col(k).cwiseAbs2();
        }
      }
      null_min = std::min(null_min, nulls);
      null_max = std::max(null_max, nulls);

      ParameterVector theta_r(static_cast<Eigen::Index>(reduced.num_parameters()));
      for (auto& t : theta_r) t = angle(rng);
      const Eigen::MatrixXd mr = compute_eom(reduced, theta_r, params, false).M;
      const auto [lo, hi] = eigen_range(mr);
      worst_post = std::min(worst_post, lo);
      worst_cond = std::max(worst_cond, condition_number(mr));
    }

    const auto label = [&](Eigen::Index i) { return full.generators[static_cast<std::size_t>(i)].str(); };
    report.checks.push_back({n, "columns " + label(yy) + " and " + label(zz) + " anti-parallel",
                             worst1 <= tolerance, worst1, "max |1 + cos|"});
    report.checks.push_back({n, "columns " + label(xy) + " and " + label(xn) + " parallel",
                             worst2 <= tolerance, worst2, "max |1 - |cos||"});
    report.checks.push_back({n, "column " + label(xx) + " vanishes", worst3 <= tolerance, worst3,
                             "max column norm"});
    report.checks.push_back({n, "rank deficiency equals 3 before removal",
                             null_min == 3 && null_max == 3, static_cast<double>(null_max),
                             "null dimension range [" + std::to_string(null_min) + ", " +
                                 std::to_string(null_max) + "]"});
    report.checks.push_back({n, "M nonsingular after removal", worst_post > tolerance, worst_post,
                             "smallest eigenvalue; max condition " + num(worst_cond)});

    std::ostringstream deps;
    deps << "N=" << n << " null dimension " << null_min << " (" << samples
         << " samples), carried by:";
    std::vector<Eigen::Index> carriers;
    for (Eigen::Index i = 0; i < support.size(); ++i) {
      if (support(i) > 1e-8 * samples) {
        carriers.push_back(i);
        deps << ' ' << label(i);
      }
    }
    report.dependency_sets.push_back(deps.str());

    // Every null direction must be accounted for by the relations that hold.
    int explained = 0;
    std::vector<Eigen::Index> allowed;
    if (worst1 <= tolerance) {
      ++explained;
      allowed.insert(allowed.end(), {yy, zz});
    }
    if (worst2 <= tolerance) {
      ++explained;
      allowed.insert(allowed.end(), {xy, xn});
    }
    if (worst3 <= tolerance) {
      ++explained;
      allowed.push_back(xx);
    }
    const bool covered = std::all_of(carriers.begin(), carriers.end(), [&](Eigen::Index i) {
      return std::find(allowed.begin(), allowed.end(), i) != allowed.end();
    });
    const bool ok = null_min == explained && null_max == explained && covered &&
                    worst_post > tolerance;
    report.dependencies_documented = report.dependencies_documented && ok;
  }
  return report;
}

void write_structure_report(std::ostream& os, const StructureReport& report) {
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  N=" << c.num_qubits << "  " << c.claim << "  ("
       << c.detail << " = " << num(c.worst) << ")\n";
  }
  os << "dependency sets:\n";
  for (const auto& d : report.dependency_sets) os << "  " << d << '\n';
  os << "all claims hold: " << (report.all_claims_hold() ? "yes" : "no") << '\n'
     << "null space fully explained by the holding relations, reduced M nonsingular: "
     << (report.dependencies_documented ? "yes" : "no") << '\n';
}

void write_plot_script(std::ostream& os, const std::string& summary_file) {
  os << "# gnuplot -p plot.gp\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set logscale y\n"
     << "set xlabel 'imaginary time'\n"
     << "set ylabel 'infidelity'\n"
     << "plot '" << summary_file
     << "' using 1:2:3 with yerrorlines title 'mean infidelity', \\\n"
     << "     for [f in system('ls run_*.csv 2>/dev/null')] f using 1:6 with lines lc rgb "
        "'#cccccc' notitle\n";
}

}  // namespace vqite
