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

#include "vqite/pauli_state.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "vqite/errors.hpp"

namespace vqite {
namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("qubit count " + std::to_string(n) +
                         " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

void check_same(const StateVector& s, const PauliString& p) {
  if (s.num_qubits() != p.num_qubits()) {
    throw DimensionError("Pauli string on " + std::to_string(p.num_qubits()) +
                         " qubits applied to a " +
                         std::to_string(s.num_qubits()) + "-qubit state");
  }
}

// i^k for k mod 4.
Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString::PauliString(int num_qubits) : num_qubits_(num_qubits) {
  check_qubits(num_qubits);
}

PauliString::PauliString(std::string_view letters)
    : num_qubits_(static_cast<int>(letters.size())) {
  check_qubits(num_qubits_);
  for (int q = 0; q < num_qubits_; ++q) {
    switch (letters[q]) {
      case 'I': set(q, PauliLetter::I); break;
      case 'X': set(q, PauliLetter::X); break;
      case 'Y': set(q, PauliLetter::Y); break;
      case 'Z': set(q, PauliLetter::Z); break;
      default:
        throw ConfigError("invalid Pauli letter '" + std::string(1, letters[q]) +
                          "' in \"" + std::string(letters) + "\"");
    }
  }
}

PauliString PauliString::single(int num_qubits, int qubit, PauliLetter letter) {
  PauliString p(num_qubits);
  p.set(qubit, letter);
  return p;
}

PauliString PauliString::pair(int num_qubits, int qubit_a, PauliLetter letter_a,
                              int qubit_b, PauliLetter letter_b) {
  PauliString p(num_qubits);
  p.set(qubit_a, letter_a);
  p.set(qubit_b, letter_b);
  return p;
}

int PauliString::weight() const { return std::popcount(x_mask_ | z_mask_); }

int PauliString::num_y() const { return std::popcount(x_mask_ & z_mask_); }

PauliLetter PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw DimensionError("qubit index out of range");
  }
  const bool x = (x_mask_ >> qubit) & 1u;
  const bool z = (z_mask_ >> qubit) & 1u;
  if (x && z) return PauliLetter::Y;
  if (x) return PauliLetter::X;
  if (z) return PauliLetter::Z;
  return PauliLetter::I;
}

void PauliString::set(int qubit, PauliLetter letter) {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw DimensionError("qubit index out of range");
  }
  const std::uint32_t bit = 1u << qubit;
  x_mask_ &= ~bit;
  z_mask_ &= ~bit;
  if (letter == PauliLetter::X || letter == PauliLetter::Y) x_mask_ |= bit;
  if (letter == PauliLetter::Z || letter == PauliLetter::Y) z_mask_ |= bit;
}

std::string PauliString::str() const {
  std::string out(static_cast<std::size_t>(num_qubits_), 'I');
  for (int q = 0; q < num_qubits_; ++q) out[q] = static_cast<char>(letter(q));
  return out;
}

StateVector::StateVector(int num_qubits) : StateVector(zeros(num_qubits)) {
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubits(num_qubits);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionError("amplitude vector length is not 2^N");
  }
}

StateVector StateVector::zeros(int num_qubits) {
  check_qubits(num_qubits);
  return StateVector(num_qubits,
                     std::vector<Complex>(std::size_t{1} << num_qubits));
}

StateVector StateVector::basis_state(int num_qubits, BasisIndex index) {
  StateVector s = zeros(num_qubits);
  if (index >= s.dim()) throw DimensionError("basis index out of range");
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::plus_state(int num_qubits) {
  StateVector s = zeros(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  std::fill(s.amplitudes_.begin(), s.amplitudes_.end(), Complex(a, 0.0));
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  for (auto& a : amplitudes_) a /= n;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.dim() != dim()) throw DimensionError("state dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) amplitudes_[i] += other.amplitudes_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  if (other.dim() != dim()) throw DimensionError("state dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) amplitudes_[i] -= other.amplitudes_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex factor) {
  for (auto& a : amplitudes_) a *= factor;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex factor, StateVector a) { return a *= factor; }

// (P psi)[b ^ x] = i^{nY} (-1)^{|b & z|} psi[b]
void apply_pauli_inplace(StateVector& state, const PauliString& p) {
  check_same(state, p);
  const std::uint32_t x = p.x_mask();
  const std::uint32_t z = p.z_mask();
  const Complex phase = i_power(p.num_y());
  auto amp = state.amplitudes();
  const std::size_t dim = amp.size();
  if (x == 0) {
    for (std::size_t b = 0; b < dim; ++b) {
      const bool odd = std::popcount(static_cast<std::uint32_t>(b) & z) & 1;
      amp[b] *= odd ? -phase : phase;
    }
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t partner = b ^ x;
    if (partner < b) continue;
    const bool odd_b = std::popcount(static_cast<std::uint32_t>(b) & z) & 1;
    const bool odd_p =
        std::popcount(static_cast<std::uint32_t>(partner) & z) & 1;
    const Complex from_b = (odd_b ? -phase : phase) * amp[b];
    const Complex from_p = (odd_p ? -phase : phase) * amp[partner];
    amp[partner] = from_b;
    amp[b] = from_p;
  }
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  StateVector out = state;
  apply_pauli_inplace(out, p);
  return out;
}

void apply_rotation_inplace(StateVector& state, const PauliString& p,
                            double angle) {
  check_same(state, p);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // -i sin * (i^{nY} (-1)^{...})
  const Complex phase = Complex(0.0, -s) * i_power(p.num_y());
  const std::uint32_t x = p.x_mask();
  const std::uint32_t z = p.z_mask();
  auto amp = state.amplitudes();
  const std::size_t dim = amp.size();
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t partner = b ^ x;
    if (partner < b) continue;
    const bool odd_b = std::popcount(static_cast<std::uint32_t>(b) & z) & 1;
    const Complex pb = odd_b ? -phase : phase;
    if (partner == b) {
      amp[b] = c * amp[b] + pb * amp[b];
      continue;
    }
    const bool odd_p =
        std::popcount(static_cast<std::uint32_t>(partner) & z) & 1;
    const Complex pp = odd_p ? -phase : phase;
    const Complex ab = amp[b];
    const Complex ap = amp[partner];
    amp[partner] = c * ap + pb * ab;
    amp[b] = c * ab + pp * ap;
  }
}

StateVector apply_rotation(const StateVector& state, const PauliString& p,
                           double angle) {
  StateVector out = state;
  apply_rotation_inplace(out, p, angle);
  return out;
}

double expectation(const StateVector& state, const PauliString& p) {
  check_same(state, p);
  const std::uint32_t x = p.x_mask();
  const std::uint32_t z = p.z_mask();
  const Complex phase = i_power(p.num_y());
  auto amp = state.amplitudes();
  Complex acc = 0.0;
  for (std::size_t b = 0; b < amp.size(); ++b) {
    const bool odd = std::popcount(static_cast<std::uint32_t>(b) & z) & 1;
    acc += std::conj(amp[b ^ x]) * amp[b] * (odd ? -1.0 : 1.0);
  }
  return (phase * acc).real();
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("state dimension mismatch");
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

std::vector<double> basis_probabilities(const StateVector& state,
                                        MeasurementBasis basis) {
  std::vector<Complex> amp(state.amplitudes().begin(),
                           state.amplitudes().end());
  if (basis == MeasurementBasis::X) {
    // Hadamard on every qubit: in-place fast Walsh-Hadamard transform.
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t h = 1; h < amp.size(); h <<= 1) {
      for (std::size_t i = 0; i < amp.size(); i += h << 1) {
        for (std::size_t j = i; j < i + h; ++j) {
          const Complex a = amp[j];
          const Complex b = amp[j + h];
          amp[j] = r * (a + b);
          amp[j + h] = r * (a - b);
        }
      }
    }
  }
  std::vector<double> probs(amp.size());
  for (std::size_t i = 0; i < amp.size(); ++i) probs[i] = std::norm(amp[i]);
  return probs;
}

}  // namespace vqite
