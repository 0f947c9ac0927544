// Copyright 2026 The dfsforge Authors
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

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dfsforge/linalg.hpp"

namespace dfsforge {

inline constexpr int kMaxQubits = 12;

/// Qubit ordering: qubit 1 is the most significant bit of the basis index
/// (leftmost tensor factor), so |x>_1 |y>_2 has index 2x + y.
inline constexpr std::size_t bit_of(int qubit, int num_qubits) {
  return static_cast<std::size_t>(num_qubits - qubit);
}

/// Normalized pure state of 1..12 qubits.
class StateVector {
 public:
  /// Normalizes `amplitudes`; rejects zero, non-finite or wrongly sized input.
  StateVector(int num_qubits, ComplexVector amplitudes);

  /// Accepts only input already normalized to `tol`.
  static StateVector from_normalized(int num_qubits, ComplexVector amplitudes,
                                     double tol = 1e-10);

  int num_qubits() const noexcept { return num_qubits_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  Complex inner(const StateVector& other) const;  // <this|other>

 private:
  int num_qubits_;
  ComplexVector amplitudes_;
};

/// Dense matrix acting on an ordered list of distinct 1-based qubits.
class LocalOperator {
 public:
  LocalOperator(std::vector<int> support, ComplexMatrix matrix);

  const std::vector<int>& support() const noexcept { return support_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  std::vector<int> support_;
  ComplexMatrix matrix_;
};

enum class PauliAxis { kX, kY, kZ };

const Eigen::Matrix2cd& pauli(PauliAxis axis);
char axis_name(PauliAxis axis);

LocalOperator single_qubit(int qubit, const ComplexMatrix& m);

/// Computational basis state from a string of '0'/'1', qubit 1 first.
StateVector basis_state(std::string_view bits);

/// Applies op to a raw amplitude vector over n qubits by contracting only the
/// support axes. Works for non-unitary operators.
ComplexVector apply_local(const LocalOperator& op, const ComplexVector& amplitudes,
                          int num_qubits);

/// Unitary application. Throws std::invalid_argument if the result is not
/// normalized to 1e-10 (i.e. op was not unitary on this state).
StateVector apply_local(const LocalOperator& op, const StateVector& s);

/// Full 2^n matrix of op; built from a Kronecker product and a basis
/// permutation, independent of apply_local.
ComplexMatrix embed_full(const LocalOperator& op, int num_qubits);

struct PauliMeasurement {
  int outcome;  // +1 or -1
  StateVector post;
  double probability;
};

/// Probability of outcome +1 when measuring sigma_axis on `qubit`.
double pauli_plus_probability(const StateVector& s, PauliAxis axis, int qubit);

/// Projective measurement of sigma_axis on `qubit` with Born-rule sampling.
PauliMeasurement measure_pauli(const StateVector& s, PauliAxis axis, int qubit,
                               std::mt19937_64& rng);

/// Post-measurement state for a forced outcome; probability of that outcome
/// must exceed 1e-14.
PauliMeasurement project_pauli(const StateVector& s, PauliAxis axis, int qubit,
                               int outcome);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Tensor product a (x) b; a's qubits come first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// (I (x) <phi|) s normalized, where phi lives on the trailing qubits. Intended
/// for states in which the trailing qubits are exactly in state phi.
StateVector contract_trailing(const StateVector& s, const StateVector& phi);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng);

/// Independent engine for stream `index` derived from a root seed (splitmix64).
std::mt19937_64 derived_rng(std::uint64_t root_seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t index);

}  // namespace dfsforge
