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

#include "vqite/shot_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vqite/errors.hpp"

namespace vqite {

std::string RawMeasurementId::label() const {
  std::ostringstream os;
  switch (kind) {
    case MeasurementKind::D: os << "D(" << mu << ':' << nu << ')'; break;
    case MeasurementKind::O: os << "O(" << mu << ')'; break;
    case MeasurementKind::Energy:
      os << 'E' << (shift == Shift::Plus ? '+' : shift == Shift::Minus ? '-' : '0')
         << (basis == MeasurementBasis::Z ? 'Z' : 'X');
      if (mu >= 0) os << '(' << mu << ')';
      break;
  }
  return os.str();
}

std::size_t measurement_count(std::size_t n) { return n * (n + 1) / 2 + n + 4 * n; }

std::vector<RawMeasurementId> enumerate_measurements(const AnsatzSpec& spec) {
  const int n = static_cast<int>(spec.num_parameters());
  std::vector<RawMeasurementId> ids;
  ids.reserve(measurement_count(spec.num_parameters()));
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) {
      ids.push_back({MeasurementKind::D, mu, nu, Shift::None, MeasurementBasis::Z, 0});
    }
  }
  for (int mu = 0; mu < n; ++mu) {
    ids.push_back({MeasurementKind::O, mu, -1, Shift::None, MeasurementBasis::Z, 0});
  }
  for (int mu = 0; mu < n; ++mu) {
    for (Shift s : {Shift::Plus, Shift::Minus}) {
      for (MeasurementBasis b : {MeasurementBasis::Z, MeasurementBasis::X}) {
        ids.push_back({MeasurementKind::Energy, mu, -1, s, b, 0});
      }
    }
  }
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k].index = k;
  return ids;
}

namespace {

double mean_of(const std::vector<double>& p, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * f[i];
  return acc;
}

double variance_of(const std::vector<double>& p, const std::vector<double>& f) {
  const double m = mean_of(p, f);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * (f[i] - m) * (f[i] - m);
  return acc;
}

}  // namespace

ExactMeasurements exact_measurements(const AnsatzSpec& spec, const ParameterVector& theta,
                                     const TfimParams& params) {
  ExactMeasurements out;
  out.ids = enumerate_measurements(spec);
  out.eom = compute_eom(spec, theta, params, /*with_shifted_energies=*/false);
  const std::size_t dim = std::size_t{1} << spec.num_qubits;
  out.z_outcome_energy.resize(dim);
  out.x_outcome_energy.resize(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    out.z_outcome_energy[b] = z_basis_energy(static_cast<BasisIndex>(b), params);
    out.x_outcome_energy[b] = x_basis_energy(static_cast<BasisIndex>(b), params);
  }

  const auto n = static_cast<Eigen::Index>(spec.num_parameters());
  out.eom.e_plus.resize(n, 2);
  out.eom.e_minus.resize(n, 2);
  out.values.resize(out.ids.size());
  out.variances.resize(out.ids.size());

  ParameterVector shifted = theta;
  std::vector<double> pz;
  std::vector<double> px;
  Eigen::Index cached_mu = -1;
  Shift cached_shift = Shift::None;
  bool first_energy_seen = false;
  for (const auto& id : out.ids) {
    double value = 0.0;
    double var = 0.0;
    switch (id.kind) {
      case MeasurementKind::D:
        value = out.eom.D(id.mu, id.nu).real();
        var = 1.0 - value * value;
        break;
      case MeasurementKind::O:
        value = out.eom.O(id.mu).imag();
        var = 1.0 - value * value;
        break;
      case MeasurementKind::Energy: {
        if (!first_energy_seen) {
          out.first_energy = id.index;
          first_energy_seen = true;
        }
        if (id.mu != cached_mu || id.shift != cached_shift) {
          shifted = theta;
          shifted(id.mu) += (id.shift == Shift::Plus ? kShiftAngle : -kShiftAngle);
          const StateVector psi = prepare_state(spec, shifted);
          pz = basis_probabilities(psi, MeasurementBasis::Z);
          px = basis_probabilities(psi, MeasurementBasis::X);
          cached_mu = id.mu;
          cached_shift = id.shift;
        }
        const bool z = id.basis == MeasurementBasis::Z;
        const auto& probs = z ? pz : px;
        const auto& f = z ? out.z_outcome_energy : out.x_outcome_energy;
        value = mean_of(probs, f);
        var = variance_of(probs, f);
        out.distributions.push_back(probs);
        auto& target = id.shift == Shift::Plus ? out.eom.e_plus : out.eom.e_minus;
        target(id.mu, z ? kBasisZ : kBasisX) = value;
        break;
      }
    }
    out.values[id.index] = value;
    out.variances[id.index] = std::max(0.0, var);
  }
  return out;
}

double intrinsic_variance(const RawMeasurementId& id, const AnsatzSpec& spec,
                          const ParameterVector& theta, const TfimParams& params) {
  const ExactMeasurements ex = exact_measurements(spec, theta, params);
  for (const auto& other : ex.ids) {
    if (other.kind == id.kind && other.mu == id.mu && other.nu == id.nu &&
        other.shift == id.shift && other.basis == id.basis) {
      return ex.variances[other.index];
    }
  }
  throw ConfigError("measurement " + id.label() + " is not part of this ansatz");
}

double sample_hadamard(double value, std::int64_t shots, Rng& rng, SamplerKind sampler) {
  if (shots < 1) throw ConfigError("shot count must be positive");
  if (!(std::abs(value) <= 1.0 + 1e-9)) {
    throw NumericalError("Hadamard-test expectation " + std::to_string(value) +
                         " outside [-1, 1]");
  }
  value = std::clamp(value, -1.0, 1.0);
  if (sampler == SamplerKind::Gaussian) {
    std::normal_distribution<double> normal;
    return value + normal(rng) * std::sqrt((1.0 - value * value) / static_cast<double>(shots));
  }
  std::binomial_distribution<std::int64_t> coin(shots, 0.5 * (1.0 + value));
  const std::int64_t up = coin(rng);
  return static_cast<double>(2 * up - shots) / static_cast<double>(shots);
}

double sample_energy(const std::vector<double>& probabilities,
                     const std::vector<double>& outcome_values, std::int64_t shots,
                     Rng& rng, SamplerKind sampler) {
  if (shots < 1) throw ConfigError("shot count must be positive");
  if (probabilities.size() != outcome_values.size()) {
    throw DimensionError("distribution and outcome table differ in length");
  }
  if (sampler == SamplerKind::Gaussian) {
    std::normal_distribution<double> normal;
    return mean_of(probabilities, outcome_values) +
           normal(rng) * std::sqrt(variance_of(probabilities, outcome_values) /
                                   static_cast<double>(shots));
  }
  // Multinomial draw as a chain of conditional binomials.
  std::int64_t remaining = shots;
  double mass_left = 0.0;
  for (double p : probabilities) mass_left += std::max(0.0, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, probabilities[i]);
    if (p == 0.0) continue;
    std::int64_t count = remaining;
    if (p < mass_left * (1.0 - 1e-12)) {
      std::binomial_distribution<std::int64_t> draw(remaining, std::min(1.0, p / mass_left));
      count = draw(rng);
    }
    acc += static_cast<double>(count) * outcome_values[i];
    remaining -= count;
    mass_left -= p;
  }
  return acc / static_cast<double>(shots);
}

double sample_measurement(const RawMeasurementId& id, const AnsatzSpec& spec,
                          const ParameterVector& theta, const TfimParams& params,
                          std::int64_t shots, Rng& rng, SamplerKind sampler) {
  const ExactMeasurements ex = exact_measurements(spec, theta, params);
  for (const auto& other : ex.ids) {
    if (other.kind == id.kind && other.mu == id.mu && other.nu == id.nu &&
        other.shift == id.shift && other.basis == id.basis) {
      if (other.kind == MeasurementKind::Energy) {
        const bool z = other.basis == MeasurementBasis::Z;
        return sample_energy(ex.distributions[other.index - ex.first_energy],
                             z ? ex.z_outcome_energy : ex.x_outcome_energy, shots, rng,
                             sampler);
      }
      return sample_hadamard(ex.values[other.index], shots, rng, sampler);
    }
  }
  throw ConfigError("measurement " + id.label() + " is not part of this ansatz");
}

ShotPlan ShotPlan::uniform(std::size_t count, std::int64_t per_circuit) {
  if (per_circuit < 1) throw ConfigError("shots per circuit must be positive");
  ShotPlan plan;
  plan.shots.assign(count, per_circuit);
  plan.total = per_circuit * static_cast<std::int64_t>(count);
  plan.average = per_circuit;
  plan.minimum = per_circuit;
  plan.r = 1.0;
  return plan;
}

ShotPlan ShotPlan::infinite(std::size_t count) {
  ShotPlan plan;
  plan.shots.assign(count, 0);
  plan.exact = true;
  return plan;
}

NoisyEom assemble_eom(const std::vector<RawMeasurementId>& ids,
                      const std::vector<double>& estimates, Eigen::Index n) {
  if (ids.size() != estimates.size()) {
    throw DimensionError("estimate vector does not match the measurement list");
  }
  NoisyEom out;
  EomData& eom = out.eom;
  Eigen::MatrixXd re_d = Eigen::MatrixXd::Zero(n, n);
  out.b = Eigen::VectorXd::Zero(n);
  eom.e_plus = Eigen::MatrixXd::Zero(n, 2);
  eom.e_minus = Eigen::MatrixXd::Zero(n, 2);
  for (const auto& id : ids) {
    const double m = estimates[id.index];
    switch (id.kind) {
      case MeasurementKind::D:
        re_d(id.mu, id.nu) = m;
        re_d(id.nu, id.mu) = m;
        break;
      case MeasurementKind::O:
        out.b(id.mu) = m;
        break;
      case MeasurementKind::Energy: {
        auto& target = id.shift == Shift::Plus ? eom.e_plus : eom.e_minus;
        target(id.mu, id.basis == MeasurementBasis::Z ? kBasisZ : kBasisX) = m;
        break;
      }
    }
  }
  eom.D = re_d.cast<Complex>();
  eom.O = Complex(0.0, 1.0) * out.b.cast<Complex>();
  eom.M = re_d - out.b * out.b.transpose();
  eom.M = 0.5 * (eom.M + eom.M.transpose()).eval();
  eom.V = shift_rule_gradient(eom.e_plus, eom.e_minus);
  out.estimates = estimates;
  return out;
}

NoisyEom measure_eom(const AnsatzSpec& spec, const ParameterVector& theta,
                     const TfimParams& params, const ShotPlan& plan, Rng& rng,
                     SamplerKind sampler) {
  ExactMeasurements ex = exact_measurements(spec, theta, params);
  if (plan.shots.size() != ex.ids.size()) {
    throw ConfigError("shot plan covers " + std::to_string(plan.shots.size()) +
                      " measurements, ansatz needs " + std::to_string(ex.ids.size()));
  }
  std::vector<double> estimates(ex.ids.size());
  for (const auto& id : ex.ids) {
    if (plan.exact) {
      estimates[id.index] = ex.values[id.index];
      continue;
    }
    const std::int64_t shots = plan.shots[id.index];
    if (shots < 1) {
      throw ConfigError("shot plan gives no shots to " + id.label());
    }
    if (id.kind == MeasurementKind::Energy) {
      const bool z = id.basis == MeasurementBasis::Z;
      estimates[id.index] =
          sample_energy(ex.distributions[id.index - ex.first_energy],
                        z ? ex.z_outcome_energy : ex.x_outcome_energy, shots, rng, sampler);
    } else {
      estimates[id.index] = sample_hadamard(ex.values[id.index], shots, rng, sampler);
    }
  }
  NoisyEom out = assemble_eom(ex.ids, estimates,
                              static_cast<Eigen::Index>(spec.num_parameters()));
  out.eom.e_z = ex.eom.e_z;
  out.eom.e_x = ex.eom.e_x;
  out.eom.var_h = ex.eom.var_h;
  out.eom.l2 = ex.eom.l2;
  out.exact = std::move(ex);
  return out;
}

}  // namespace vqite
