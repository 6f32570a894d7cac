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
#include <string>
#include <string_view>
#include <vector>

#include "vqite/pauli_state.hpp"

namespace vqite {

using ParameterVector = Eigen::VectorXd;

/// Layered sequential Pauli-rotation ansatz
///   |Psi(theta)> = prod_mu exp(-i theta_mu P_mu) |+>^{\otimes N},
/// with generators applied in list order (generator 0 acts first).
struct AnsatzSpec {
  int num_qubits = 0;
  int layers = 1;
  std::vector<PauliString> generators;
  std::vector<PauliString> removed;

  std::size_t num_parameters() const { return generators.size(); }
  StateVector reference() const { return StateVector::plus_state(num_qubits); }
};

/// One layer of the default gate set before removal. Bonds are swept from
/// (N, N-1) down to (2, 1); each bond contributes
///   Y_{j+1}Y_j, Z_{j+1}Z_j, X_{j+1}X_j, X_{j+1}Y_j
/// and the layer ends with X_1 ... X_N. Indices here are 1-based sites.
std::vector<PauliString> default_layer(int num_qubits);

/// {Z_N Z_{N-1}, X_N, X_N X_{N-1}}: the generators whose M-columns are
/// degenerate at every theta for the default layer.
std::vector<PauliString> default_removed(int num_qubits);

/// `layers` copies of default_layer with the first occurrence of each string
/// in `removed` dropped. Throws ConfigError for N < 3 or layers < 1, or when a
/// removed string is not part of the gate set.
AnsatzSpec build_ansatz(int num_qubits, int layers,
                        const std::vector<PauliString>& removed);
AnsatzSpec build_default_ansatz(int num_qubits, int layers);

/// Plain-text generator list, one string per line, qubit 1 first.
std::string to_text(const AnsatzSpec& spec);
AnsatzSpec ansatz_from_text(std::string_view text);

StateVector prepare_state(const AnsatzSpec& spec, const ParameterVector& theta);

/// d|Psi>/d theta_mu: (-i P_mu) inserted right after gate mu. Norm is 1.
StateVector derivative_state(const AnsatzSpec& spec, const ParameterVector& theta,
                             std::size_t mu);

/// The state together with all derivative states, built from one forward
/// sweep of partial products.
struct TangentStates {
  StateVector state;
  std::vector<StateVector> derivatives;
};
TangentStates tangent_states(const AnsatzSpec& spec, const ParameterVector& theta);

enum class InitMode { Uniform, Constant };

/// Uniform draws in [-scale, scale] from `seed`, or every entry equal to
/// `scale` in Constant mode.
ParameterVector initial_parameters(std::size_t count, InitMode mode,
                                   double scale, std::uint64_t seed);

}  // namespace vqite
