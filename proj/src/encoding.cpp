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

#include "dfsforge/encoding.hpp"

#include <cmath>
#include <string>

namespace dfsforge {

namespace {

constexpr int kMaxLogical = kMaxQubits / kClusterSize;

StateVector two_qubit(Complex a00, Complex a01, Complex a10, Complex a11) {
  ComplexVector v(4);
  v << a00, a01, a10, a11;
  return StateVector(2, std::move(v));
}

void require_logical_count(int num_logical) {
  if (num_logical < 1 || num_logical > kMaxLogical) {
    throw SizeError("logical qubit count " + std::to_string(num_logical) +
                    " outside [1, " + std::to_string(kMaxLogical) + "]");
  }
  require_within_cap(std::size_t{1} << (kClusterSize * num_logical), "logical frame");
}

}  // namespace

StateVector singlet() {
  const double r = 1.0 / std::sqrt(2.0);
  return two_qubit(0.0, r, -r, 0.0);
}

StateVector triplet(TripletM m) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (m) {
    case TripletM::kMinus:
      return two_qubit(1.0, 0.0, 0.0, 0.0);
    case TripletM::kZero:
      return two_qubit(0.0, r, r, 0.0);
    case TripletM::kPlus:
      break;
  }
  return two_qubit(0.0, 0.0, 0.0, 1.0);
}

StateVector logical_zero() { return tensor(singlet(), singlet()); }

StateVector logical_one() {
  const auto tp = triplet(TripletM::kPlus).amplitudes();
  const auto t0 = triplet(TripletM::kZero).amplitudes();
  const auto tm = triplet(TripletM::kMinus).amplitudes();
  const ComplexVector sum = kron(tp, tm) - kron(t0, t0) + kron(tm, tp);
  return StateVector::from_normalized(4, sum / std::sqrt(3.0));
}

LogicalFrame::LogicalFrame(int num_logical) : num_logical_(num_logical) {
  require_logical_count(num_logical);
  const ComplexVector zero = logical_zero().amplitudes();
  const ComplexVector one = logical_one().amplitudes();
  const Eigen::Index logical_dim = Eigen::Index{1} << num_logical;
  basis_.resize(Eigen::Index{1} << num_physical(), logical_dim);
  for (Eigen::Index x = 0; x < logical_dim; ++x) {
    ComplexMatrix column = ComplexMatrix::Ones(1, 1);
    for (int l = 0; l < num_logical; ++l) {
      const bool bit = (x >> (num_logical - 1 - l)) & 1;
      column = kron(column, bit ? one : zero);
    }
    basis_.col(x) = column;
  }
}

StateVector LogicalFrame::basis_state(Eigen::Index x) const {
  return StateVector(num_physical(), basis_.col(x));
}

double LogicalFrame::leakage(const ComplexVector& amplitudes) const {
  return (amplitudes - basis_ * (basis_.adjoint() * amplitudes)).norm();
}

StateVector encode(const ComplexVector& amplitudes, int num_logical) {
  require_logical_count(num_logical);
  if (amplitudes.size() != (Eigen::Index{1} << num_logical)) {
    throw std::invalid_argument("encode: expected 2^L amplitudes");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("encode: logical amplitudes are not normalized");
  }
  const LogicalFrame frame(num_logical);
  return StateVector(frame.num_physical(), frame.basis() * amplitudes);
}

LeakageDecomposition logical_components(const StateVector& s, const LogicalFrame& frame) {
  if (s.num_qubits() != frame.num_physical()) {
    throw std::invalid_argument("logical_components: state does not match frame");
  }
  LeakageDecomposition out;
  out.logical_amplitudes = frame.basis().adjoint() * s.amplitudes();
  out.leakage_norm = frame.leakage(s.amplitudes());
  return out;
}

VerificationReport distance2_report(double tol) {
  VerificationReport report("distance2");
  const ComplexVector zero = logical_zero().amplitudes();
  const ComplexVector one = logical_one().amplitudes();
  double off_diagonal = 0.0;
  double diagonal_gap = 0.0;
  for (int q = 1; q <= kClusterSize; ++q) {
    for (PauliAxis axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
      const LocalOperator error = single_qubit(q, pauli(axis));
      const ComplexVector e_zero = apply_local(error, zero, kClusterSize);
      const ComplexVector e_one = apply_local(error, one, kClusterSize);
      off_diagonal = std::max(off_diagonal, std::abs(zero.dot(e_one)));
      diagonal_gap = std::max(diagonal_gap, std::abs(zero.dot(e_zero) - one.dot(e_one)));
    }
  }
  report.add_bound("off_diagonal", off_diagonal, tol,
                   "max |<0_L|E|1_L>| over sigma_{x,y,z} on qubits 1..4");
  report.add_bound("diagonal_gap", diagonal_gap, tol,
                   "max |<0_L|E|0_L> - <1_L|E|1_L>| over sigma_{x,y,z} on qubits 1..4");
  return report;
}

}  // namespace dfsforge
