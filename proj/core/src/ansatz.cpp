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

#include "vqite/ansatz.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "vqite/errors.hpp"

namespace vqite {
namespace {

void check_theta(const AnsatzSpec& spec, const ParameterVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != spec.num_parameters()) {
    throw DimensionError("parameter vector has length " +
                         std::to_string(theta.size()) + ", ansatz expects " +
                         std::to_string(spec.num_parameters()));
  }
}

}  // namespace

std::vector<PauliString> default_layer(int n) {
  if (n < 3) {
    throw ConfigError("default ansatz needs N >= 3, got " + std::to_string(n));
  }
  using L = PauliLetter;
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(5 * n - 4));
  // 0-based qubit b is the lower site of bond (b+1, b).
  for (int b = n - 2; b >= 0; --b) {
    out.push_back(PauliString::pair(n, b + 1, L::Y, b, L::Y));
    out.push_back(PauliString::pair(n, b + 1, L::Z, b, L::Z));
    out.push_back(PauliString::pair(n, b + 1, L::X, b, L::X));
    out.push_back(PauliString::pair(n, b + 1, L::X, b, L::Y));
  }
  for (int q = 0; q < n; ++q) out.push_back(PauliString::single(n, q, L::X));
  return out;
}

std::vector<PauliString> default_removed(int n) {
  if (n < 3) {
    throw ConfigError("default ansatz needs N >= 3, got " + std::to_string(n));
  }
  using L = PauliLetter;
  return {PauliString::pair(n, n - 1, L::Z, n - 2, L::Z),
          PauliString::single(n, n - 1, L::X),
          PauliString::pair(n, n - 1, L::X, n - 2, L::X)};
}

AnsatzSpec build_ansatz(int num_qubits, int layers,
                        const std::vector<PauliString>& removed) {
  if (layers < 1) throw ConfigError("ansatz needs at least one layer");
  const auto layer = default_layer(num_qubits);
  AnsatzSpec spec;
  spec.num_qubits = num_qubits;
  spec.layers = layers;
  spec.removed = removed;
  for (int l = 0; l < layers; ++l) {
    spec.generators.insert(spec.generators.end(), layer.begin(), layer.end());
  }
  for (const auto& r : removed) {
    if (r.num_qubits() != num_qubits) {
      throw ConfigError("removed generator " + r.str() + " has wrong length");
    }
    auto it = std::find(spec.generators.begin(), spec.generators.end(), r);
    if (it == spec.generators.end()) {
      throw ConfigError("removed generator " + r.str() + " is not in the gate set");
    }
    spec.generators.erase(it);
  }
  return spec;
}

AnsatzSpec build_default_ansatz(int num_qubits, int layers) {
  return build_ansatz(num_qubits, layers, default_removed(num_qubits));
}

std::string to_text(const AnsatzSpec& spec) {
  std::ostringstream os;
  os << "# qubits=" << spec.num_qubits << " layers=" << spec.layers
     << " parameters=" << spec.num_parameters() << '\n';
  for (const auto& r : spec.removed) os << "# removed " << r.str() << '\n';
  for (const auto& g : spec.generators) os << g.str() << '\n';
  return os.str();
}

AnsatzSpec ansatz_from_text(std::string_view text) {
  AnsatzSpec spec;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) {
        if (tok.rfind("layers=", 0) == 0) spec.layers = std::stoi(tok.substr(7));
        if (tok == "removed" && ls >> tok) spec.removed.emplace_back(tok);
      }
      continue;
    }
    PauliString p(line);
    if (spec.num_qubits == 0) spec.num_qubits = p.num_qubits();
    if (p.num_qubits() != spec.num_qubits) {
      throw ConfigError("inconsistent generator lengths in ansatz text");
    }
    spec.generators.push_back(p);
  }
  if (spec.generators.empty()) throw ConfigError("ansatz text has no generators");
  return spec;
}

StateVector prepare_state(const AnsatzSpec& spec, const ParameterVector& theta) {
  check_theta(spec, theta);
  StateVector psi = spec.reference();
  for (std::size_t k = 0; k < spec.generators.size(); ++k) {
    apply_rotation_inplace(psi, spec.generators[k], theta(static_cast<Eigen::Index>(k)));
  }
  return psi;
}

StateVector derivative_state(const AnsatzSpec& spec, const ParameterVector& theta,
                             std::size_t mu) {
  check_theta(spec, theta);
  if (mu >= spec.num_parameters()) {
    throw DimensionError("derivative index " + std::to_string(mu) +
                         " out of range");
  }
  StateVector psi = spec.reference();
  for (std::size_t k = 0; k < spec.generators.size(); ++k) {
    apply_rotation_inplace(psi, spec.generators[k], theta(static_cast<Eigen::Index>(k)));
    if (k == mu) {
      apply_pauli_inplace(psi, spec.generators[k]);
      psi *= Complex(0.0, -1.0);
    }
  }
  return psi;
}

TangentStates tangent_states(const AnsatzSpec& spec, const ParameterVector& theta) {
  check_theta(spec, theta);
  const std::size_t n = spec.num_parameters();
  TangentStates out;
  out.derivatives.reserve(n);
  StateVector psi = spec.reference();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& g = spec.generators[k];
    apply_rotation_inplace(psi, g, theta(static_cast<Eigen::Index>(k)));
    // Every earlier derivative state picks up gate k as well.
    for (auto& d : out.derivatives) {
      apply_rotation_inplace(d, g, theta(static_cast<Eigen::Index>(k)));
    }
    StateVector d = apply_pauli(psi, g);
    d *= Complex(0.0, -1.0);
    out.derivatives.push_back(std::move(d));
  }
  out.state = std::move(psi);
  return out;
}

ParameterVector initial_parameters(std::size_t count, InitMode mode,
                                   double scale, std::uint64_t seed) {
  ParameterVector theta(static_cast<Eigen::Index>(count));
  if (mode == InitMode::Constant) {
    theta.setConstant(scale);
    return theta;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = dist(rng);
  return theta;
}

}  // namespace vqite
