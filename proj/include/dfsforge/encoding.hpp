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

#include <vector>

#include "dfsforge/hilbert.hpp"
#include "dfsforge/report.hpp"

namespace dfsforge {

enum class TripletM { kMinus, kZero, kPlus };

/// (|01> - |10>) / sqrt(2).
StateVector singlet();
/// |t_-> = |00>, |t_0> = (|01> + |10>) / sqrt(2), |t_+> = |11>.
StateVector triplet(TripletM m);

/// |0_L> = |s> (x) |s>.
StateVector logical_zero();
/// |1_L> = (|t_+ t_-> - |t_0 t_0> + |t_- t_+>) / sqrt(3).
StateVector logical_one();

inline constexpr int kClusterSize = 4;

/// First physical qubit (1-based) of logical qubit `cluster` (0-based).
inline constexpr int cluster_offset(int cluster) { return kClusterSize * cluster + 1; }

/// Encoded basis {|x_1 ... x_L>_L} over 4L physical qubits, index x in
/// big-endian order (logical qubit 1 is the most significant bit).
class LogicalFrame {
 public:
  explicit LogicalFrame(int num_logical);

  int num_logical() const noexcept { return num_logical_; }
  int num_physical() const noexcept { return kClusterSize * num_logical_; }
  Eigen::Index logical_dim() const noexcept { return basis_.cols(); }

  /// Columns are the encoded basis states.
  const ComplexMatrix& basis() const noexcept { return basis_; }
  StateVector basis_state(Eigen::Index x) const;
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }
  double leakage(const ComplexVector& amplitudes) const;

 private:
  int num_logical_;
  ComplexMatrix basis_;
};

struct LeakageDecomposition {
  ComplexVector logical_amplitudes;
  double leakage_norm = 0.0;
};

/// sum_x a_x (x)_l |x_l>_L. Amplitudes must be normalized.
StateVector encode(const ComplexVector& amplitudes, int num_logical);

LeakageDecomposition logical_components(const StateVector& s, const LogicalFrame& frame);

/// Knill-Laflamme detection conditions for all 12 single-qubit Paulis on the
/// 4-qubit code: max |<0_L|E|1_L>| and max |<0_L|E|0_L> - <1_L|E|1_L>|.
VerificationReport distance2_report(double tol = 1e-12);

}  // namespace dfsforge
