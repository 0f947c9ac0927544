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

#include "dfsforge/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dfsforge {

namespace {

constexpr int kTwoClusterQubits = 2 * kClusterSize;

void require_pair_in_range(ExchangePair pair, int num_qubits) {
  if (pair.i > num_qubits || pair.j > num_qubits) {
    throw std::out_of_range("exchange pair (" + std::to_string(pair.i) + "," +
                            std::to_string(pair.j) + ") outside " +
                            std::to_string(num_qubits) + " qubits");
  }
}

const ComplexMatrix& swap_matrix() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
  }();
  return m;
}

ComplexMatrix full_exchange(int i, int j, int n) {
  return embed_full(exchange(ExchangePair(i, j), n), n);
}

// Powers of a unitary through its Schur form, which stays unitary to rounding
// for any exponent (repeated squaring drifts by about n * eps).
ComplexMatrix unitary_power(const ComplexMatrix& base, int exponent) {
  const Eigen::ComplexSchur<ComplexMatrix> schur(base);
  const ComplexMatrix& q = schur.matrixU();
  ComplexVector phases = schur.matrixT().diagonal();
  for (auto& z : phases) z = std::pow(z / std::abs(z), exponent);
  return q * phases.asDiagonal() * q.adjoint();
}

void require_steps(int steps) {
  if (steps < 1) throw std::invalid_argument("product formula needs at least one step");
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("generator dimensions differ");
}

double wrap_angle(double a) {
  // Into (-pi, pi]; shifting by 2 pi only flips the SU(2) sign.
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

// Logical E_13 = n . sigma with n = (-sqrt3/2, 0, 1/2).
constexpr double kAxisX = -0.86602540378443864676;
constexpr double kAxisZ = 0.5;
constexpr double kMaxAxisRotation = 2.0 * std::numbers::pi / 3.0;

struct LogicalRotation {
  enum class Axis { kZ, kN } axis;
  double angle;  // logical rotation angle: exp(-i angle axis.sigma / 2)
};

// rx(b) = rz(a) rn(phi) rz(c) for |b| <= 2 pi / 3, returned in time order.
std::vector<LogicalRotation> x_rotation_via_axis(double b) {
  const double s = std::sin(b / 2.0);
  const double half_phi = std::asin(std::clamp(2.0 / std::sqrt(3.0) * std::abs(s), 0.0, 1.0));
  const Complex w00(std::cos(half_phi), -kAxisZ * std::sin(half_phi));
  const Complex w01(0.0, -kAxisX * std::sin(half_phi));
  const Complex t00(std::cos(b / 2.0), 0.0);
  const Complex t01(0.0, -s);
  const double sum = 2.0 * (std::arg(w00) - std::arg(t00));
  const double diff = std::abs(s) < 1e-15 ? 0.0 : 2.0 * (std::arg(w01) - std::arg(t01));
  const double a = 0.5 * (sum + diff);
  const double c = 0.5 * (sum - diff);
  return {{LogicalRotation::Axis::kZ, c},
          {LogicalRotation::Axis::kN, 2.0 * half_phi},
          {LogicalRotation::Axis::kZ, a}};
}

}  // namespace

ExchangePair::ExchangePair(int first, int second) : i(first), j(second) {
  if (i == j) throw std::invalid_argument("exchange pair needs two distinct qubits");
  if (i < 1 || j < 1) throw std::out_of_range("exchange pair qubits are 1-based");
}

LocalOperator exchange(ExchangePair pair, int num_qubits) {
  require_pair_in_range(pair, num_qubits);
  return LocalOperator({pair.i, pair.j}, swap_matrix());
}

LocalOperator exchange_from_heisenberg(ExchangePair pair, int num_qubits) {
  require_pair_in_range(pair, num_qubits);
  ComplexMatrix m = identity(4);
  for (PauliAxis axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
    m += kron(pauli(axis), pauli(axis));
  }
  return LocalOperator({pair.i, pair.j}, 0.5 * m);
}

HermitianMatrix exchange_hamiltonian(ExchangePair pair, int num_qubits) {
  return HermitianMatrix(embed_full(exchange(pair, num_qubits), num_qubits));
}

LogicalGateMatrix logical_action(const ComplexMatrix& op, const LogicalFrame& frame) {
  const ComplexMatrix& basis = frame.basis();
  if (op.rows() != basis.rows() || op.cols() != basis.rows()) {
    throw std::invalid_argument("logical_action: operator does not match the frame");
  }
  const ComplexMatrix image = op * basis;
  LogicalGateMatrix out;
  out.matrix = basis.adjoint() * image;
  const ComplexMatrix outside = image - basis * out.matrix;
  for (Eigen::Index c = 0; c < outside.cols(); ++c) {
    out.residual_leakage = std::max(out.residual_leakage, outside.col(c).norm());
  }
  return out;
}

LogicalGateMatrix logical_action(const HermitianMatrix& h, const LogicalFrame& frame) {
  return logical_action(h.matrix(), frame);
}

const HermitianMatrix& encoded_x_hamiltonian() {
  static const HermitianMatrix h = [] {
    const ComplexMatrix e13 = full_exchange(1, 3, kClusterSize);
    const ComplexMatrix e12 = full_exchange(1, 2, kClusterSize);
    return HermitianMatrix(-(2.0 / std::sqrt(3.0)) * (e13 + 0.5 * e12));
  }();
  return h;
}

Matrix2 rz(double theta) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::polar(1.0, -theta / 2.0);
  m(1, 1) = std::polar(1.0, theta / 2.0);
  return m;
}

Matrix2 rx(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix2 m;
  m << c, Complex(0.0, -s), Complex(0.0, -s), c;
  return m;
}

ComplexMatrix rotation_z(double theta) {
  static const HermitianMatrix e12 = exchange_hamiltonian(ExchangePair(1, 2), kClusterSize);
  return hermitian_expm(e12, theta / 2.0);
}

ComplexMatrix rotation_x(double theta, RotationMode mode) {
  if (std::holds_alternative<IdealRotation>(mode)) {
    return hermitian_expm(encoded_x_hamiltonian(), -theta / 2.0);
  }
  static const HermitianMatrix e13 = exchange_hamiltonian(ExchangePair(1, 3), kClusterSize);
  static const HermitianMatrix e12 = exchange_hamiltonian(ExchangePair(1, 2), kClusterSize);
  const int steps = std::get<TrotterRotation>(mode).steps;
  const double root3 = std::sqrt(3.0);
  return trotter_sum(e13, e12, theta / root3, theta / (2.0 * root3), steps);
}

ComplexMatrix trotter_sum(const HermitianMatrix& a, const HermitianMatrix& b, double alpha,
                          double beta, int steps) {
  require_steps(steps);
  require_same_dim(a, b);
  const double n = static_cast<double>(steps);
  const ComplexMatrix step = hermitian_expm(a, alpha / n) * hermitian_expm(b, beta / n);
  return unitary_power(step, steps);
}

ComplexMatrix lie_product(const HermitianMatrix& a, const HermitianMatrix& b, int steps) {
  require_steps(steps);
  require_same_dim(a, b);
  const double t = 1.0 / std::sqrt(static_cast<double>(steps));
  const ComplexMatrix q = hermitian_expm(a, t) * hermitian_expm(b, t) *
                          hermitian_expm(a, -t) * hermitian_expm(b, -t);
  return unitary_power(q, steps);
}

ComplexMatrix lie_product_limit(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  // -[A, B] = i (i [A, B]) and i [A, B] is Hermitian.
  const HermitianMatrix generator(kI * commutator(a.matrix(), b.matrix()));
  return hermitian_expm(generator, 1.0);
}

double gate_infidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("gate_infidelity: shape mismatch");
  }
  const double d = static_cast<double>(a.rows());
  const Complex overlap = (a.adjoint() * b).trace() / d;
  return std::max(0.0, 1.0 - std::norm(overlap));
}

double phase_insensitive_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("phase_insensitive_distance: shape mismatch");
  }
  const Complex overlap = (a.adjoint() * b).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a * phase - b).norm();
}

Matrix2 to_special_unitary(const Matrix2& u) {
  const Complex det = u.determinant();
  if (std::abs(det) < 1e-300) throw std::invalid_argument("to_special_unitary: singular matrix");
  return u / std::sqrt(det);
}

EulerAngles euler_synthesize(const Matrix2& target) {
  if (unitarity_residual(target) > 1e-8 || std::abs(target.determinant() - 1.0) > 1e-8) {
    throw std::invalid_argument("euler_synthesize: target must be special unitary");
  }
  const double c = std::abs(target(0, 0));
  const double s = std::abs(target(0, 1));
  EulerAngles out;
  out.beta = 2.0 * std::atan2(s, c);
  constexpr double kDegenerate = 1e-12;
  if (s < kDegenerate) {
    out.beta = 0.0;
    out.alpha = -2.0 * std::arg(target(0, 0));
  } else if (c < kDegenerate) {
    out.beta = std::numbers::pi;
    out.alpha = -2.0 * std::arg(target(0, 1)) - std::numbers::pi;
  } else {
    const double sum = -2.0 * std::arg(target(0, 0));
    const double diff = -2.0 * std::arg(target(0, 1)) - std::numbers::pi;
    out.alpha = 0.5 * (sum + diff);
    out.gamma = 0.5 * (sum - diff);
  }
  out.alpha = wrap_angle(out.alpha);
  out.gamma = wrap_angle(out.gamma);
  return out;
}

Matrix2 euler_product(const EulerAngles& angles) {
  return rz(angles.alpha) * rx(angles.beta) * rz(angles.gamma);
}

LocalOperator pulse_operator(const Pulse& pulse, double fraction) {
  const double phi = pulse.angle * fraction;
  return LocalOperator({pulse.pair.i, pulse.pair.j},
                       std::cos(phi) * identity(4) - kI * std::sin(phi) * swap_matrix());
}

PulseSchedule::PulseSchedule(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 2 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("PulseSchedule: qubit count outside [2, 12]");
  }
}

void PulseSchedule::add(ExchangePair pair, double angle) {
  require_pair_in_range(pair, num_qubits_);
  if (!std::isfinite(angle)) throw std::invalid_argument("PulseSchedule: non-finite angle");
  pulses_.push_back({pair, angle});
}

void PulseSchedule::append(const PulseSchedule& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("PulseSchedule::append: qubit count mismatch");
  }
  for (const auto& p : other.pulses_) {
    if (!pulses_.empty() && pulses_.back().pair == p.pair) {
      pulses_.back().angle += p.angle;
    } else {
      pulses_.push_back(p);
    }
  }
}

ComplexMatrix PulseSchedule::unitary() const {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
  ComplexMatrix u = identity(dim);
  for (const auto& p : pulses_) {
    u = embed_full(pulse_operator(p), num_qubits_) * u;
  }
  return u;
}

ComplexVector PulseSchedule::apply(const ComplexVector& amplitudes) const {
  ComplexVector out = amplitudes;
  for (const auto& p : pulses_) {
    out = apply_local(pulse_operator(p), out, num_qubits_);
  }
  return out;
}

nlohmann::ordered_json PulseSchedule::to_json() const {
  nlohmann::ordered_json j;
  j["num_qubits"] = num_qubits_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : pulses_) {
    nlohmann::ordered_json pj;
    pj["i"] = p.pair.i;
    pj["j"] = p.pair.j;
    pj["angle"] = p.angle;
    arr.push_back(std::move(pj));
  }
  j["pulses"] = std::move(arr);
  return j;
}

PulseSchedule PulseSchedule::from_json(const nlohmann::json& j) {
  PulseSchedule schedule(j.at("num_qubits").get<int>());
  for (const auto& pj : j.at("pulses")) {
    schedule.add(ExchangePair(pj.at("i").get<int>(), pj.at("j").get<int>()),
                 pj.at("angle").get<double>());
  }
  return schedule;
}

PulseSchedule compile_logical_gate(const Matrix2& target, int cluster, int num_qubits) {
  const int base = cluster_offset(cluster);
  if (cluster < 0 || base + kClusterSize - 1 > num_qubits) {
    throw std::out_of_range("compile_logical_gate: cluster outside the register");
  }
  const EulerAngles angles = euler_synthesize(to_special_unitary(target));

  // Time order: rz(gamma), rx(beta), rz(alpha).
  std::vector<LogicalRotation> sequence{{LogicalRotation::Axis::kZ, angles.gamma}};
  if (angles.beta != 0.0) {
    const int pieces = static_cast<int>(std::ceil(angles.beta / kMaxAxisRotation - 1e-12));
    for (int p = 0; p < pieces; ++p) {
      const auto part = x_rotation_via_axis(angles.beta / pieces);
      sequence.insert(sequence.end(), part.begin(), part.end());
    }
  }
  sequence.push_back({LogicalRotation::Axis::kZ, angles.alpha});

  const ExchangePair z_pair(base, base + 1);
  const ExchangePair n_pair(base, base + 2);
  PulseSchedule raw(num_qubits);
  for (const auto& r : sequence) {
    // Restricted to the cluster's DFS, E_12 = -sigma_z and E_13 = n . sigma.
    if (r.axis == LogicalRotation::Axis::kZ) {
      raw.add(z_pair, -r.angle / 2.0);
    } else {
      raw.add(n_pair, r.angle / 2.0);
    }
  }
  PulseSchedule merged(num_qubits);
  merged.append(raw);
  PulseSchedule out(num_qubits);
  for (const auto& p : merged.pulses()) {
    if (std::abs(p.angle) > 1e-15) out.add(p.pair, p.angle);
  }
  return out;
}

namespace {

EncodedGate compiled_gate(const Matrix2& target, int cluster, int num_qubits) {
  PulseSchedule schedule = compile_logical_gate(target, cluster, num_qubits);
  ComplexMatrix u = schedule.unitary();
  return {std::move(schedule), std::move(u)};
}

}  // namespace

EncodedGate encoded_hadamard(int cluster, int num_qubits) {
  Matrix2 h;
  h << 1.0, 1.0, 1.0, -1.0;
  return compiled_gate(h / std::sqrt(2.0), cluster, num_qubits);
}

EncodedGate encoded_not(int cluster, int num_qubits) {
  return compiled_gate(pauli_x(), cluster, num_qubits);
}

const ComplexMatrix& h1_generator() {
  static const ComplexMatrix h1 = [] {
    const int n = kTwoClusterQubits;
    const auto e = [n](int i, int j) { return full_exchange(i, j, n); };
    return ComplexMatrix(commutator(e(2, 6), e(1, 2) + e(2, 5)) +
                         commutator(e(1, 5), e(1, 2) + e(1, 6)));
  }();
  return h1;
}

const HermitianMatrix& h1_hamiltonian() {
  static const HermitianMatrix h(kI * h1_generator());
  return h;
}

const HermitianMatrix& h2_hamiltonian() {
  static const HermitianMatrix h = [] {
    const int n = kTwoClusterQubits;
    ComplexMatrix sum = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int j = 5; j <= 8; ++j) {
      sum += full_exchange(1, j, n) + full_exchange(2, j, n);
    }
    return HermitianMatrix(std::move(sum));
  }();
  return h;
}

const ComplexMatrix& c_double_commutator() {
  static const ComplexMatrix m = [] {
    const ComplexMatrix& h1 = h1_generator();
    return ComplexMatrix(commutator(h1, commutator(h2_hamiltonian().matrix(), h1)));
  }();
  return m;
}

const HermitianMatrix& c_hamiltonian() {
  static const HermitianMatrix c(kCPrefactor * c_double_commutator());
  return c;
}

ComplexMatrix controlled_phase_unitary(double theta) {
  return hermitian_expm(c_hamiltonian(), theta);
}

LogicalGateMatrix controlled_phase(double theta) {
  static const LogicalFrame frame(2);
  return logical_action(controlled_phase_unitary(theta), frame);
}

const CnotProgram& encoded_cnot() {
  static const CnotProgram program = [] {
    const int n = kTwoClusterQubits;
    const EncodedGate h_target = encoded_hadamard(1, n);
    const EncodedGate x_control = encoded_not(0, n);
    PulseSchedule before(n);
    before.append(h_target.schedule);
    before.append(x_control.schedule);
    PulseSchedule after(n);
    after.append(x_control.schedule);
    after.append(h_target.schedule);
    const double angle = std::numbers::pi;
    ComplexMatrix u = after.unitary() * controlled_phase_unitary(angle) * before.unitary();
    return CnotProgram{std::move(before), angle, std::move(after), std::move(u)};
  }();
  return program;
}

double max_schedule_leakage(const PulseSchedule& schedule, const LogicalFrame& frame,
                            const std::vector<StateVector>& inputs, int interior_samples) {
  if (schedule.num_qubits() != frame.num_physical()) {
    throw std::invalid_argument("max_schedule_leakage: schedule does not match frame");
  }
  const int n = schedule.num_qubits();
  double worst = 0.0;
  for (const auto& input : inputs) {
    ComplexVector state = input.amplitudes();
    worst = std::max(worst, frame.leakage(state));
    for (const auto& pulse : schedule.pulses()) {
      for (int t = 1; t <= interior_samples; ++t) {
        const double fraction = static_cast<double>(t) / (interior_samples + 1);
        worst = std::max(worst,
                         frame.leakage(apply_local(pulse_operator(pulse, fraction), state, n)));
      }
      state = apply_local(pulse_operator(pulse), state, n);
      worst = std::max(worst, frame.leakage(state));
    }
  }
  return worst;
}

std::vector<NamedGenerator> gate_generators() {
  std::vector<NamedGenerator> out;
  const auto add_exchange = [&out](int i, int j, int n) {
    out.push_back({"E" + std::to_string(i) + std::to_string(j) + "/" + std::to_string(n) + "q",
                   exchange_hamiltonian(ExchangePair(i, j), n)});
  };
  add_exchange(1, 2, kClusterSize);
  add_exchange(1, 3, kClusterSize);
  add_exchange(3, 4, kClusterSize);
  add_exchange(2, 4, kClusterSize);
  out.push_back({"H_x", encoded_x_hamiltonian()});
  add_exchange(1, 2, kTwoClusterQubits);
  add_exchange(1, 3, kTwoClusterQubits);
  add_exchange(5, 6, kTwoClusterQubits);
  add_exchange(5, 7, kTwoClusterQubits);
  out.push_back({"h2", h2_hamiltonian()});
  out.push_back({"i*h1", h1_hamiltonian()});
  out.push_back({"c", c_hamiltonian()});
  return out;
}

}  // namespace dfsforge
