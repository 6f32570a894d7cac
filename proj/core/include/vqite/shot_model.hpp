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

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vqite/ansatz.hpp"
#include "vqite/eom.hpp"
#include "vqite/tfim.hpp"

namespace vqite {

using Rng = std::mt19937_64;

enum class MeasurementKind { D, O, Energy };
enum class Shift { Plus, Minus, None };

/// One circuit producing one raw scalar m_kappa.
///  - D(mu, nu), mu <= nu: Hadamard test for Re D_{mu nu}.
///  - O(mu): Hadamard test for Im O_mu (Re O vanishes identically).
///  - Energy(shift, mu, basis): E_Z or E_X of the state with theta_mu shifted.
struct RawMeasurementId {
  MeasurementKind kind = MeasurementKind::D;
  int mu = -1;
  int nu = -1;
  Shift shift = Shift::None;
  MeasurementBasis basis = MeasurementBasis::Z;
  /// Position in the canonical ordering.
  std::size_t index = 0;

  std::string label() const;
  friend bool operator==(const RawMeasurementId&, const RawMeasurementId&) = default;
};

/// Canonical order: D (mu <= nu, row-major), then O, then energies
/// (mu ascending, + before -, Z before X). Unshifted energies are not part of
/// the per-step budget.
std::vector<RawMeasurementId> enumerate_measurements(const AnsatzSpec& spec);

/// N(N+1)/2 + N + 4N for N parameters.
std::size_t measurement_count(std::size_t num_parameters);

/// Exact statistics of every raw measurement at one parameter point.
struct ExactMeasurements {
  std::vector<RawMeasurementId> ids;
  std::vector<double> values;     // <m_kappa>
  std::vector<double> variances;  // single-shot <m^2> - <m>^2
  /// Outcome distribution per energy circuit, indexed by id.index - first
  /// energy index.
  std::vector<std::vector<double>> distributions;
  std::size_t first_energy = 0;
  /// Bitstring functionals shared by all Z- and X-basis circuits.
  std::vector<double> z_outcome_energy;
  std::vector<double> x_outcome_energy;
  /// Exact data at theta (M, V, D, O, energies, shifted energies).
  EomData eom;
};

ExactMeasurements exact_measurements(const AnsatzSpec& spec, const ParameterVector& theta,
                                     const TfimParams& params);

/// sigma^2 of one raw measurement. Hadamard observables: 1 - m^2. Energy
/// observables: variance of the bitstring functional under the basis
/// distribution.
double intrinsic_variance(const RawMeasurementId& id, const AnsatzSpec& spec,
                          const ParameterVector& theta, const TfimParams& params);

enum class SamplerKind {
  Bernoulli,  // genuine binomial / multinomial draws
  Gaussian,   // exact value plus matched-variance normal noise (profiling only)
};

/// Mean of `shots` +-1 outcomes with expectation `value`. Throws
/// NumericalError when |value| exceeds 1 by more than 1e-9.
double sample_hadamard(double value, std::int64_t shots, Rng& rng,
                       SamplerKind sampler = SamplerKind::Bernoulli);

/// Mean of `shots` draws of outcome_values[b] with b ~ probabilities.
double sample_energy(const std::vector<double>& probabilities,
                     const std::vector<double>& outcome_values, std::int64_t shots,
                     Rng& rng, SamplerKind sampler = SamplerKind::Bernoulli);

/// Estimate of a single raw measurement from `shots` repetitions.
double sample_measurement(const RawMeasurementId& id, const AnsatzSpec& spec,
                          const ParameterVector& theta, const TfimParams& params,
                          std::int64_t shots, Rng& rng,
                          SamplerKind sampler = SamplerKind::Bernoulli);

/// Shots per raw measurement, indexed canonically.
struct ShotPlan {
  std::vector<std::int64_t> shots;
  std::int64_t total = 0;
  std::int64_t average = 0;
  std::int64_t minimum = 0;
  double r = 1.0;
  /// Infinite-shot mode: estimates equal exact values.
  bool exact = false;

  static ShotPlan uniform(std::size_t count, std::int64_t per_circuit);
  static ShotPlan infinite(std::size_t count);
};

struct NoisyEom {
  /// D holds Re D-hat, O holds i * b-hat, M = Re D-hat - b b^T (symmetrised),
  /// V from sampled shifted energies. e_z / e_x are exact.
  EomData eom;
  Eigen::VectorXd b;  // estimated Im O
  std::vector<double> estimates;
  ExactMeasurements exact;
};

/// Draws every raw measurement in canonical order and assembles M and V.
/// Throws ConfigError if `plan` does not cover every measurement.
NoisyEom measure_eom(const AnsatzSpec& spec, const ParameterVector& theta,
                     const TfimParams& params, const ShotPlan& plan, Rng& rng,
                     SamplerKind sampler = SamplerKind::Bernoulli);

/// Assembles M and V from a raw estimate vector in canonical order.
NoisyEom assemble_eom(const std::vector<RawMeasurementId>& ids,
                      const std::vector<double>& estimates, Eigen::Index num_parameters);

}  // namespace vqite
