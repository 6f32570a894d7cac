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

#include "vqite/eom.hpp"

#include "vqite/errors.hpp"

namespace vqite {

Eigen::MatrixXcd gram_matrix(std::span<const StateVector> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const Complex v = inner(states[i], states[j]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

Eigen::VectorXd shift_rule_gradient(const Eigen::MatrixXd& e_plus,
                                    const Eigen::MatrixXd& e_minus) {
  if (e_plus.rows() != e_minus.rows() || e_plus.cols() != e_minus.cols()) {
    throw DimensionError("shifted energy arrays differ in shape");
  }
  return 0.5 * (e_minus.rowwise().sum() - e_plus.rowwise().sum());
}

ParameterShiftGradient gradient_parameter_shift(const AnsatzSpec& spec,
                                                const ParameterVector& theta,
                                                const TfimParams& params) {
  const auto n = static_cast<Eigen::Index>(spec.num_parameters());
  ParameterShiftGradient g;
  g.e_plus.resize(n, 2);
  g.e_minus.resize(n, 2);
  ParameterVector shifted = theta;
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    for (int sign : {+1, -1}) {
      shifted(mu) = theta(mu) + sign * kShiftAngle;
      const EnergyTerms e = energy_terms(prepare_state(spec, shifted), params);
      auto& target = sign > 0 ? g.e_plus : g.e_minus;
      target(mu, kBasisZ) = e.e_z;
      target(mu, kBasisX) = e.e_x;
    }
    shifted(mu) = theta(mu);
  }
  g.V = shift_rule_gradient(g.e_plus, g.e_minus);
  return g;
}

EomData compute_eom(const AnsatzSpec& spec, const ParameterVector& theta,
                    const TfimParams& params, bool with_shifted_energies) {
  if (spec.num_qubits != params.num_sites) {
    throw DimensionError("ansatz and model sizes differ");
  }
  const TangentStates t = tangent_states(spec, theta);
  const auto n = static_cast<Eigen::Index>(spec.num_parameters());
  const HamiltonianTerms h = build_hamiltonian(params);
  const StateVector h_psi = h.apply(t.state);

  EomData eom;
  eom.D = gram_matrix(t.derivatives);
  eom.O.resize(n);
  eom.V.resize(n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    eom.O(mu) = inner(t.derivatives[mu], t.state);
    eom.V(mu) = -inner(t.derivatives[mu], h_psi).real();
  }
  eom.M = (eom.D + eom.O * eom.O.transpose()).real();
  eom.M = 0.5 * (eom.M + eom.M.transpose()).eval();

  const EnergyTerms e = energy_terms(t.state, params);
  eom.e_z = e.e_z;
  eom.e_x = e.e_x;
  const double mean = inner(t.state, h_psi).real();
  eom.var_h = inner(h_psi, h_psi).real() - mean * mean;

  // Pseudo-inverse optimum on the numerically nonzero spectrum.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(eom.M);
  const Eigen::VectorXd& w = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff());
  const Eigen::VectorXd proj = eig.eigenvectors().transpose() * eom.V;
  double vmv = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) > cutoff) vmv += proj(i) * proj(i) / w(i);
  }
  eom.l2 = 2.0 * eom.var_h - vmv;

  if (with_shifted_energies) {
    const ParameterShiftGradient g = gradient_parameter_shift(spec, theta, params);
    eom.e_plus = g.e_plus;
    eom.e_minus = g.e_minus;
  }
  return eom;
}

double mclachlan_distance(const EomData& eom, const Eigen::VectorXd& thetadot,
                          double var_h) {
  if (thetadot.size() != eom.V.size()) {
    throw DimensionError("thetadot length differs from the EOM size");
  }
  return thetadot.dot(eom.M * thetadot) - 2.0 * eom.V.dot(thetadot) + 2.0 * var_h;
}

Eigen::MatrixXcd compute_sd(const AnsatzSpec& spec, const ParameterVector& theta_next) {
  const TangentStates t = tangent_states(spec, theta_next);
  return gram_matrix(t.derivatives);
}

}  // namespace vqite
