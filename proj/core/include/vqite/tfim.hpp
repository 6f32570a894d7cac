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
#include <vector>

#include "vqite/pauli_state.hpp"

namespace vqite {

/// Open transverse-field Ising chain H = -J sum Z_j Z_{j+1} - Delta sum X_j.
struct TfimParams {
  int num_sites = 6;
  double coupling = 1.0;  // J
  double field = 1.0;     // Delta

  void validate() const;
};

struct HamiltonianTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

/// Weighted Pauli strings; ZZ bonds first (j = 1..N-1), then X_j (j = 1..N).
struct HamiltonianTerms {
  std::vector<HamiltonianTerm> terms;

  double expectation(const StateVector& state) const;
  StateVector apply(const StateVector& state) const;
};

HamiltonianTerms build_hamiltonian(const TfimParams& params);

/// H as a real symmetric 2^N x 2^N matrix; only Z and X terms appear, so all
/// elements are real in the computational basis.
Eigen::MatrixXd hamiltonian_matrix(const TfimParams& params);

struct GroundState {
  double energy = 0.0;
  double gap = 0.0;
  StateVector state;
  /// Set when the two lowest eigenvalues are closer than 1e-10.
  bool degenerate = false;
};

/// Lowest eigenpair by dense diagonalisation. The phase is fixed by making
/// the largest-magnitude amplitude real and positive. Limited to N <= 12.
GroundState exact_ground_state(const TfimParams& params);

struct EnergyTerms {
  double e_z = 0.0;  // <-J sum Z Z>
  double e_x = 0.0;  // <-Delta sum X>
  double total() const { return e_z + e_x; }
};

EnergyTerms energy_terms(const StateVector& state, const TfimParams& params);

/// <H^2> - <H>^2.
double energy_variance(const StateVector& state, const TfimParams& params);

/// Bitstring functional of the Z-basis energy, -J sum z_j z_{j+1} with
/// z = +1 for bit 0.
double z_basis_energy(BasisIndex outcome, const TfimParams& params);
/// X-basis functional, -Delta sum x_j with x = +1 for outcome bit 0 (|+>).
double x_basis_energy(BasisIndex outcome, const TfimParams& params);

}  // namespace vqite
