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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqite {

using Complex = std::complex<double>;

/// Qubit q (0-based) is bit q of the computational basis index; qubit 1 in
/// the usual 1-based physics labelling is the least significant bit.
using BasisIndex = std::uint32_t;

inline constexpr int kMaxQubits = 20;

enum class PauliLetter : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Phase-free tensor product of single-qubit Pauli letters.
///
/// Stored as a pair of bit masks: `x_mask` marks qubits carrying X or Y,
/// `z_mask` marks qubits carrying Z or Y. The textual form lists qubit 1
/// first, so "XZI" is X_1 Z_2.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int num_qubits);
  /// Parses a string over {I,X,Y,Z}; throws ConfigError on other characters.
  explicit PauliString(std::string_view letters);

  /// Single-site and nearest-neighbour constructors use 0-based qubits.
  static PauliString single(int num_qubits, int qubit, PauliLetter letter);
  static PauliString pair(int num_qubits, int qubit_a, PauliLetter letter_a,
                          int qubit_b, PauliLetter letter_b);

  int num_qubits() const { return num_qubits_; }
  int weight() const;
  PauliLetter letter(int qubit) const;
  void set(int qubit, PauliLetter letter);

  std::uint32_t x_mask() const { return x_mask_; }
  std::uint32_t z_mask() const { return z_mask_; }
  int num_y() const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int num_qubits_ = 0;
  std::uint32_t x_mask_ = 0;
  std::uint32_t z_mask_ = 0;
};

enum class MeasurementBasis { Z, X };

/// Dense amplitude vector over 2^N basis states.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>.
  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  static StateVector zeros(int num_qubits);
  static StateVector basis_state(int num_qubits, BasisIndex index);
  /// |+>^{\otimes N}.
  static StateVector plus_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  void normalize();

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex factor);

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex factor, StateVector a);

/// P|psi>.
StateVector apply_pauli(const StateVector& state, const PauliString& p);
void apply_pauli_inplace(StateVector& state, const PauliString& p);

/// exp(-i angle P)|psi> = cos(angle)|psi> - i sin(angle) P|psi>.
StateVector apply_rotation(const StateVector& state, const PauliString& p,
                           double angle);
void apply_rotation_inplace(StateVector& state, const PauliString& p,
                            double angle);

/// <psi|P|psi>, real for Hermitian P.
double expectation(const StateVector& state, const PauliString& p);

/// <a|b>, conjugate-linear in `a`.
Complex inner(const StateVector& a, const StateVector& b);

/// Outcome distribution of measuring every qubit in the given basis. For the X
/// basis, outcome bit q = 0 means qubit q was found in |+>.
std::vector<double> basis_probabilities(const StateVector& state,
                                        MeasurementBasis basis);

}  // namespace vqite
