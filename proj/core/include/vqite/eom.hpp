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
#include <numbers>

#include "vqite/ansatz.hpp"
#include "vqite/tfim.hpp"

namespace vqite {

/// Parameter displacement of the shift rule for exp(-i theta P) gates:
/// dE/dtheta = E(theta + pi/4) - E(theta - pi/4).
inline constexpr double kShiftAngle = std::numbers::pi / 4.0;

/// Column layout of the shifted-energy arrays.
inline constexpr int kBasisZ = 0;
inline constexpr int kBasisX = 1;

/// Ingredients of the imaginary-time equation of motion M thetadot = V.
struct EomData {
  Eigen::MatrixXcd D;   // <d_mu Psi | d_nu Psi>
  Eigen::VectorXcd O;   // <d_mu Psi | Psi>, purely imaginary
  Eigen::MatrixXd M;    // Re(D + O O^T)
  Eigen::VectorXd V;    // -Re <d_mu Psi | H | Psi>
  Eigen::MatrixXcd SD;  // D at the post-step parameters; empty unless set
  double e_z = 0.0;
  double e_x = 0.0;
  double var_h = 0.0;
  /// 2 var(H) - V^T M^+ V: the McLachlan distance at the unregularised optimum.
  double l2 = 0.0;
  /// Energies at theta_mu +/- kShiftAngle; rows mu, columns (Z, X).
  Eigen::MatrixXd e_plus;
  Eigen::MatrixXd e_minus;

  double energy() const { return e_z + e_x; }
  Eigen::Index size() const { return V.size(); }
};

/// Exact evaluation from derivative states. Shifted energies are filled only
/// when `with_shifted_energies` is set (they cost 2 N_theta state preparations).
EomData compute_eom(const AnsatzSpec& spec, const ParameterVector& theta,
                    const TfimParams& params, bool with_shifted_energies = true);

struct ParameterShiftGradient {
  Eigen::VectorXd V;
  Eigen::MatrixXd e_plus;
  Eigen::MatrixXd e_minus;
};

/// V_mu = (E_mu^- - E_mu^+) / 2 from energies at theta_mu +/- pi/4, each
/// evaluated as E_Z + E_X.
ParameterShiftGradient gradient_parameter_shift(const AnsatzSpec& spec,
                                                const ParameterVector& theta,
                                                const TfimParams& params);

/// V from shifted energies, used for both exact and sampled data.
Eigen::VectorXd shift_rule_gradient(const Eigen::MatrixXd& e_plus,
                                    const Eigen::MatrixXd& e_minus);

/// thetadot^T M thetadot - 2 V^T thetadot + 2 var(H).
double mclachlan_distance(const EomData& eom, const Eigen::VectorXd& thetadot,
                          double var_h);

/// Tangent-overlap matrix <d_nu Psi | d_nu' Psi> at `theta_next`.
Eigen::MatrixXcd compute_sd(const AnsatzSpec& spec, const ParameterVector& theta_next);

/// Gram matrix of a list of states, <a_i|a_j>.
Eigen::MatrixXcd gram_matrix(std::span<const StateVector> states);

}  // namespace vqite
