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
#include <string>
#include <string_view>
#include <vector>

#include "vqite/allocator.hpp"
#include "vqite/ansatz.hpp"
#include "vqite/shot_model.hpp"
#include "vqite/solver.hpp"
#include "vqite/tfim.hpp"

namespace vqite {

enum class NoiseMode { Exact, Sampled };
enum class WeightSource { Noisy, Exact };

/// Everything that determines a run. Serialises to the same flat key=value
/// format it is parsed from.
struct RunConfig {
  TfimParams model;
  int layers = 1;
  InitMode init_mode = InitMode::Uniform;
  double init_scale = 0.01;
  std::uint64_t init_seed = 20240601;

  RegularizationPolicy regularization;
  StepControl step;

  NoiseMode noise = NoiseMode::Exact;
  SamplerKind sampler = SamplerKind::Bernoulli;
  std::int64_t shots = 10000;  // average shots per circuit
  double r = 1.0;
  CostKind cost = CostKind::ThetaDot;
  WeightSource weights = WeightSource::Noisy;

  int runs = 10;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  std::string out;
  bool dump_allocation = false;

  double grid_step = 0.05;
  std::vector<double> r_values{0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<std::int64_t> shot_values{5000, 10000, 20000, 40000};
  std::vector<double> snapshots{1.0, 2.5, 4.0, 5.5};
  /// Allocated comparison point of the shot sweep.
  double compare_r = 0.4;
  std::int64_t compare_shots = 10000;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Parses `key = value` lines. Blank lines and `#` comments are ignored;
/// unknown keys, duplicates and malformed values throw ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Applies one key=value pair on top of an existing config.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& config);

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::string to_string(RegularizationMethod method);
std::string to_string(CostKind kind);
std::string to_string(NoiseMode mode);
RegularizationMethod parse_method(std::string_view text);
CostKind parse_cost(std::string_view text);

}  // namespace vqite
