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

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dfsforge/encoding.hpp"
#include "dfsforge/hilbert.hpp"
#include "dfsforge/linalg.hpp"

namespace dfsforge {

using Matrix2 = Eigen::Matrix2cd;

/// Unordered pair of distinct 1-based physical qubits.
struct ExchangePair {
  int i;
  int j;

  ExchangePair(int first, int second);
  bool operator==(const ExchangePair&) const = default;
};

/// SWAP on (i, j): E|x>_i|y>_j = |y>_i|x>_j.
LocalOperator exchange(ExchangePair pair, int num_qubits);

/// (I + sx sx + sy sy + sz sz) / 2 on (i, j); equals exchange() for spin 1/2.
LocalOperator exchange_from_heisenberg(ExchangePair pair, int num_qubits);

/// E_ij as a full 2^n Hermitian matrix.
HermitianMatrix exchange_hamiltonian(ExchangePair pair, int num_qubits);

struct LogicalGateMatrix {
  ComplexMatrix matrix;
  /// max_y ||(I - P) Op |y_L>|| over encoded basis states.
  double residual_leakage = 0.0;
};

/// Matrix elements <x_L|Op|y_L> in the frame's encoded basis.
LogicalGateMatrix logical_action(const ComplexMatrix& op, const LogicalFrame& frame);
LogicalGateMatrix logical_action(const HermitianMatrix& h, const LogicalFrame& frame);

/// H_x = -(2/sqrt 3)(E_13 + E_12/2) on one 4-qubit cluster; acts as encoded sigma_x.
const HermitianMatrix& encoded_x_hamiltonian();

/// exp(-i theta sigma/2) on a single (logical) qubit.
Matrix2 rz(double theta);
Matrix2 rx(double theta);

/// Encoded exp(-i theta Zbar/2), realized as exp(+i theta E_12 / 2) (16x16).
ComplexMatrix rotation_z(double theta);

struct IdealRotation {};
struct TrotterRotation {
  int steps = 1;
};
using RotationMode = std::variant<IdealRotation, TrotterRotation>;

/// Encoded exp(-i theta Xbar/2): E_13 and E_12 switched on together (ideal)
/// or the Lie-sum approximant with the given number of steps (16x16).
ComplexMatrix rotation_x(double theta, RotationMode mode = IdealRotation{});

/// (e^{i alpha A/n} e^{i beta B/n})^n.
ComplexMatrix trotter_sum(const HermitianMatrix& a, const HermitianMatrix& b, double alpha,
                          double beta, int steps);

/// Q^n with Q = e^{iA/sqrt n} e^{iB/sqrt n} e^{-iA/sqrt n} e^{-iB/sqrt n}.
ComplexMatrix lie_product(const HermitianMatrix& a, const HermitianMatrix& b, int steps);

/// lim Q^n = exp(-[A, B]).
ComplexMatrix lie_product_limit(const HermitianMatrix& a, const HermitianMatrix& b);

/// 1 - |Tr(A^dag B) / d|^2; zero iff A and B agree up to a global phase.
double gate_infidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// min over phi of ||A - e^{i phi} B||_F.
double phase_insensitive_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Divides by a square root of the determinant.
Matrix2 to_special_unitary(const Matrix2& u);

/// Target ~ rz(alpha) rx(beta) rz(gamma), beta in [0, pi].
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// ZXZ Euler angles for a special unitary. When beta is 0 or pi, gamma is
/// set to 0 and the whole z rotation goes into alpha.
EulerAngles euler_synthesize(const Matrix2& target);
Matrix2 euler_product(const EulerAngles& angles);

/// One exchange pulse exp(-i angle E_ij).
struct Pulse {
  ExchangePair pair;
  double angle;
};

LocalOperator pulse_operator(const Pulse& pulse, double fraction = 1.0);

class PulseSchedule {
 public:
  explicit PulseSchedule(int num_qubits);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }

  void add(ExchangePair pair, double angle);
  /// Appends, merging consecutive pulses on the same pair.
  void append(const PulseSchedule& other);

  /// Time-ordered product, last pulse leftmost.
  ComplexMatrix unitary() const;
  ComplexVector apply(const ComplexVector& amplitudes) const;

  nlohmann::ordered_json to_json() const;
  static PulseSchedule from_json(const nlohmann::json& j);

 private:
  int num_qubits_;
  std::vector<Pulse> pulses_;
};

/// Exact single-pair pulse sequence on cluster `cluster` (0-based) whose
/// encoded action equals `target` up to global phase. Uses E_12 for z
/// rotations and E_13 for rotations about (-sqrt3/2, 0, 1/2).
PulseSchedule compile_logical_gate(const Matrix2& target, int cluster, int num_qubits);

struct EncodedGate {
  PulseSchedule schedule;
  ComplexMatrix unitary;
};

EncodedGate encoded_hadamard(int cluster = 0, int num_qubits = kClusterSize);
EncodedGate encoded_not(int cluster = 0, int num_qubits = kClusterSize);

/// h1 = [E26, E12 + E25] + [E15, E12 + E16] on 8 qubits (anti-Hermitian).
const ComplexMatrix& h1_generator();
/// i h1.
const HermitianMatrix& h1_hamiltonian();
/// h2 = sum_{j=5..8} (E1j + E2j).
const HermitianMatrix& h2_hamiltonian();
/// [h1, [h2, h1]] without prefactor.
const ComplexMatrix& c_double_commutator();

/// Prefactor that makes c act as the projector onto |0_L 1_L> on the encoded
/// subspace: the double commutator has eigenvalue 128 there.
inline constexpr double kCPrefactor = 1.0 / 128.0;

const HermitianMatrix& c_hamiltonian();

/// exp(i theta c), 256 x 256.
ComplexMatrix controlled_phase_unitary(double theta);
LogicalGateMatrix controlled_phase(double theta);

/// Encoded CNOT (control = logical qubit 1, active on |1_L>) on 8 qubits:
/// (I x H) (X x I) C_P(pi) (X x I) (I x H).
struct CnotProgram {
  PulseSchedule before;
  double cphase_angle;
  PulseSchedule after;
  ComplexMatrix unitary;
};

const CnotProgram& encoded_cnot();

/// Largest leakage out of `frame`'s encoded subspace seen while running the
/// schedule on each input, sampled at `interior_samples` equally spaced times
/// inside every pulse and at every pulse boundary.
double max_schedule_leakage(const PulseSchedule& schedule, const LogicalFrame& frame,
                            const std::vector<StateVector>& inputs, int interior_samples = 10);

struct NamedGenerator {
  std::string name;
  HermitianMatrix hamiltonian;
};

/// Every Hamiltonian switched on by the gate set: the exchange pulses of both
/// clusters, H_x, h2, i h1 and c.
std::vector<NamedGenerator> gate_generators();

}  // namespace dfsforge
