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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "vqite/config.hpp"
#include "vqite/errors.hpp"
#include "vqite/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config_path;
  std::optional<int> n;
  std::optional<double> eps;
  std::optional<std::string> method;
  std::optional<std::string> shots;
  std::optional<double> r;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> cost;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<double> tau_final;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file");
  cmd->add_option("--n", o.n, "number of spins");
  cmd->add_option("--eps", o.eps, "regularisation strength");
  cmd->add_option("--method", o.method, "tikhonov | eigencut");
  cmd->add_option("--shots", o.shots, "average shots per circuit");
  cmd->add_option("--r", o.r, "minimum-shot fraction in (0, 1]");
  cmd->add_option("--runs", o.runs, "ensemble size");
  cmd->add_option("--seed", o.seed, "base noise seed");
  cmd->add_option("--cost", o.cost, "theta-dot | wavefunction | mclachlan");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--tau-final", o.tau_final, "final imaginary time");
}

vqite::RunConfig resolve(const Overrides& o) {
  vqite::RunConfig c = o.config_path.empty() ? vqite::RunConfig{} : vqite::load_config(o.config_path);
  if (o.n) c.model.num_sites = *o.n;
  if (o.eps) c.regularization.epsilon = *o.eps;
  if (o.method) c.regularization.method = vqite::parse_method(*o.method);
  if (o.shots) vqite::set_config_value(c, "shots", *o.shots);
  if (o.r) c.r = *o.r;
  if (o.runs) c.runs = *o.runs;
  if (o.seed) c.seed = *o.seed;
  if (o.cost) c.cost = vqite::parse_cost(*o.cost);
  if (o.out) c.out = *o.out;
  if (o.threads) c.threads = *o.threads;
  if (o.tau_final) c.step.tau_final = *o.tau_final;
  for (auto& t : c.snapshots) t = std::min(t, c.step.tau_final);
  c.validate();
  return c;
}

void print_final(const vqite::EnsembleResult& res) {
  const auto& last = res.summary.rows.back();
  std::cout << "tau=" << last.tau << " mean_infidelity=" << last.mean_infidelity
            << " stderr=" << last.stderr_infidelity << " mean_energy=" << last.mean_energy
            << " runs=" << last.runs << " aborted=" << res.summary.aborted << '\n';
}

template <typename Write>
void emit(const std::string& dir, const std::string& name, Write&& write) {
  if (dir.empty()) {
    write(std::cout);
    return;
  }
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name);
  write(f);
  std::cout << "wrote " << (std::filesystem::path(dir) / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational imaginary-time evolution of transverse-field Ising chains"};
  app.require_subcommand(1);
  Overrides o;

  auto* noiseless = app.add_subcommand("noiseless", "exact-expectation trajectory");
  auto* noisy = app.add_subcommand("noisy", "shot-noise ensemble");
  auto* sweep_r = app.add_subcommand("sweep-r", "minimum-shot fraction sweep");
  auto* sweep_shots = app.add_subcommand("sweep-shots", "shot budget sweep");
  auto* verify = app.add_subcommand("verify", "generator-dependency report");
  for (auto* cmd : {noiseless, noisy, sweep_r, sweep_shots, verify}) add_common(cmd, o);
  int samples = 50;
  std::vector<int> sizes{4, 5, 6};
  verify->add_option("--samples", samples, "random parameter points per size");
  verify->add_option("--sizes", sizes, "chain lengths");

  CLI11_PARSE(app, argc, argv);

  try {
    vqite::RunConfig cfg = resolve(o);
    if (noiseless->parsed()) {
      cfg.noise = vqite::NoiseMode::Exact;
      cfg.runs = 1;
      const vqite::Experiment exp(cfg);
      const auto rec = exp.run(cfg.seed);
      emit(cfg.out, "trajectory.csv",
           [&](std::ostream& os) { vqite::write_trajectory_csv(os, rec, vqite::config_hash(cfg)); });
      if (rec.aborted) {
        std::cerr << "vqite: " << rec.error << '\n';
        return kExitNumerical;
      }
      std::cerr << "final infidelity " << rec.rows.back().infidelity << ", energy "
                << rec.rows.back().energy << " (exact " << exp.ground_state().energy << ")\n";
    } else if (noisy->parsed()) {
      cfg.noise = vqite::NoiseMode::Sampled;
      const auto res = vqite::run_ensemble(cfg);
      if (res.summary.completed == 0) {
        std::cerr << "vqite: every run aborted\n";
        return kExitNumerical;
      }
      print_final(res);
    } else if (sweep_r->parsed()) {
      cfg.noise = vqite::NoiseMode::Sampled;
      const auto rows = vqite::sweep_r(cfg, cfg.r_values);
      emit(cfg.out, "sweep_r.csv",
           [&](std::ostream& os) { vqite::write_sweep_r_csv(os, rows, vqite::config_hash(cfg)); });
    } else if (sweep_shots->parsed()) {
      cfg.noise = vqite::NoiseMode::Sampled;
      const auto rows = vqite::sweep_shots(cfg, cfg.shot_values);
      emit(cfg.out, "sweep_shots.csv", [&](std::ostream& os) {
        vqite::write_sweep_shots_csv(os, rows, vqite::config_hash(cfg));
      });
    } else if (verify->parsed()) {
      const auto report = vqite::verify_structure(sizes, samples, cfg.seed, 1e-10, cfg.model);
      emit(cfg.out, "structure.txt",
           [&](std::ostream& os) { vqite::write_structure_report(os, report); });
    }
  } catch (const vqite::ConfigError& e) {
    std::cerr << "vqite: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const vqite::DimensionError& e) {
    std::cerr << "vqite: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const vqite::NumericalError& e) {
    std::cerr << "vqite: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
