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

#include "vqite/tfim.hpp"

#include <bit>
#include <cmath>
#include <iostream>

#include "vqite/errors.hpp"

namespace vqite {

void TfimParams::validate() const {
  if (num_sites < 2) {
    throw ConfigError("TFIM needs at least 2 sites, got " +
                      std::to_string(num_sites));
  }
  if (num_sites > kMaxQubits) throw ConfigError("TFIM chain too long");
  if (!std::isfinite(coupling) || !std::isfinite(field)) {
    throw ConfigError("TFIM couplings must be finite");
  }
}

double HamiltonianTerms::expectation(const StateVector& state) const {
  double e = 0.0;
  for (const auto& t : terms) e += t.coefficient * vqite::expectation(state, t.pauli);
  return e;
}

StateVector HamiltonianTerms::apply(const StateVector& state) const {
  StateVector out = StateVector::zeros(state.num_qubits());
  for (const auto& t : terms) {
    out += Complex(t.coefficient, 0.0) * apply_pauli(state, t.pauli);
  }
  return out;
}

HamiltonianTerms build_hamiltonian(const TfimParams& params) {
  params.validate();
  const int n = params.num_sites;
  HamiltonianTerms h;
  for (int j = 0; j + 1 < n; ++j) {
    h.terms.push_back({-params.coupling,
                       PauliString::pair(n, j, PauliLetter::Z, j + 1,
                                         PauliLetter::Z)});
  }
  for (int j = 0; j < n; ++j) {
    h.terms.push_back({-params.field, PauliString::single(n, j, PauliLetter::X)});
  }
  return h;
}

double z_basis_energy(BasisIndex outcome, const TfimParams& params) {
  // Adjacent bits differ -> z_j z_{j+1} = -1.
  const int n = params.num_sites;
  const std::uint32_t bonds = (1u << (n - 1)) - 1u;
  const int anti = std::popcount((outcome ^ (outcome >> 1)) & bonds);
  return -params.coupling * static_cast<double>((n - 1) - 2 * anti);
}

double x_basis_energy(BasisIndex outcome, const TfimParams& params) {
  const int n = params.num_sites;
  const int minus = std::popcount(outcome & ((1u << n) - 1u));
  return -params.field * static_cast<double>(n - 2 * minus);
}

Eigen::MatrixXd hamiltonian_matrix(const TfimParams& params) {
  params.validate();
  const int n = params.num_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    h(b, b) = z_basis_energy(static_cast<BasisIndex>(b), params);
    for (int j = 0; j < n; ++j) h(b ^ (Eigen::Index{1} << j), b) -= params.field;
  }
  return h;
}

GroundState exact_ground_state(const TfimParams& params) {
  params.validate();
  if (params.num_sites > 12) {
    throw ConfigError("dense diagonalisation limited to N <= 12");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hamiltonian_matrix(params));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("Hamiltonian eigensolve failed");
  }
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXd v = eig.eigenvectors().col(0);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;

  GroundState gs;
  gs.energy = w(0);
  gs.gap = w.size() > 1 ? w(1) - w(0) : 0.0;
  gs.degenerate = w.size() > 1 && gs.gap < 1e-10;
  if (gs.degenerate) {
    std::cerr << "warning: degenerate TFIM ground space (gap " << gs.gap
              << "); returning the first eigenvector\n";
  }
  std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[i] = v(i);
  gs.state = StateVector(params.num_sites, std::move(amps));
  gs.state.normalize();
  return gs;
}

EnergyTerms energy_terms(const StateVector& state, const TfimParams& params) {
  params.validate();
  if (state.num_qubits() != params.num_sites) {
    throw DimensionError("state and model sizes differ");
  }
  EnergyTerms e;
  const auto pz = basis_probabilities(state, MeasurementBasis::Z);
  for (std::size_t b = 0; b < pz.size(); ++b) {
    e.e_z += pz[b] * z_basis_energy(static_cast<BasisIndex>(b), params);
  }
  for (int j = 0; j < params.num_sites; ++j) {
    e.e_x -= params.field *
             expectation(state, PauliString::single(params.num_sites, j,
                                                    PauliLetter::X));
  }
  return e;
}

double energy_variance(const StateVector& state, const TfimParams& params) {
  const HamiltonianTerms h = build_hamiltonian(params);
  const StateVector h_psi = h.apply(state);
  const double mean = inner(state, h_psi).real();
  const double second = inner(h_psi, h_psi).real();
  return second - mean * mean;
}

}  // namespace vqite
