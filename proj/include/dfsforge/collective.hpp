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

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "dfsforge/hilbert.hpp"
#include "dfsforge/linalg.hpp"
#include "dfsforge/report.hpp"

namespace dfsforge {

/// S_alpha = sum_j sigma_alpha^j on k qubits.
struct CollectiveOperators {
  int num_qubits = 0;
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;

  const ComplexMatrix& operator[](PauliAxis axis) const;
};

CollectiveOperators collective_operators(int k);

/// S_alpha |psi> without forming 2^k matrices.
ComplexVector apply_collective_sum(PauliAxis axis, const ComplexVector& amplitudes, int k);

using StabilizerParams = std::array<Complex, 3>;
using RotationVector = std::array<double, 3>;

/// Single-qubit factor G(v) = exp(i v . sigma) = I cos|v| + i (v . sigma) sin|v| / |v|.
/// |v| is the principal square root of v_x^2 + v_y^2 + v_z^2, so complex v
/// yields SL(2) contractions; the |v| -> 0 limit is taken by series.
Eigen::Matrix2cd collective_factor(const StabilizerParams& v);
Eigen::Matrix2cd collective_factor(const RotationVector& v);

/// Element D(v) = exp(i v . S) of the collective stabilizer, stored in
/// product form G(v)^{(x)k}.
struct StabilizerElement {
  StabilizerParams v{};
  int num_qubits = 0;
  ComplexMatrix matrix;
  /// ||exp(i v.S) - G^{(x)k}||_F, or -1 when the cross-check was skipped (k > 8).
  double cross_check_residual = -1.0;
};

/// Builds D(v) both as exp(i v.S) and as the k-fold tensor power of G(v),
/// throws NumericError if they disagree beyond 1e-10, and returns the
/// product form.
StabilizerElement stabilizer_element(const StabilizerParams& v, int k);
StabilizerElement stabilizer_element(const RotationVector& v, int k);

/// D(v)|psi> by applying G(v) to each qubit.
ComplexVector apply_stabilizer(const StabilizerParams& v, const ComplexVector& amplitudes, int k);

/// Random real v: direction uniform on the sphere, |v| uniform in [0, max_norm].
RotationVector random_rotation_vector(std::mt19937_64& rng, double max_norm);

/// Orthonormal basis of the spin-0 sector {psi : S_alpha psi = 0}.
class DfsBasis {
 public:
  DfsBasis(int num_qubits, ComplexMatrix basis);

  int num_qubits() const noexcept { return num_qubits_; }
  Eigen::Index dimension() const noexcept { return basis_.cols(); }
  /// Columns are the basis vectors.
  const ComplexMatrix& basis() const noexcept { return basis_; }
  std::vector<StateVector> vectors() const;

  /// P = B B^dag, formed on demand.
  ComplexMatrix projector() const;
  ComplexVector project(const ComplexVector& amplitudes) const;
  /// ||(I - P) psi||.
  double leakage(const ComplexVector& amplitudes) const;

 private:
  int num_qubits_;
  ComplexMatrix basis_;
};

/// k even, 2 <= k <= 12. Nullspace of [S_x; S_y; S_z] by SVD for k <= 8; for
/// larger k the S_+ nullspace inside the S_z = 0 sector.
DfsBasis dfs_basis(int k);

/// Spin-0 multiplicity C(k, k/2) - C(k, k/2 + 1). Throws for odd k.
int dfs_dimension(int k);

/// Random unit vector in the span of a DFS basis (complex Gaussian coefficients).
StateVector random_dfs_state(const DfsBasis& basis, std::mt19937_64& rng);

/// Standard normal deviate (Box-Muller on uniform01).
double standard_normal(std::mt19937_64& rng);

inline constexpr int kStabilizerSamples = 20;

/// Checks S_alpha|psi> = 0 and D(v)|psi> = |psi> for 20 fixed random real v
/// with |v| <= pi. Passes iff both maxima are <= tol.
VerificationReport check_dfs_condition(const std::vector<StateVector>& states, int k,
                                       double tol);

/// Sufficient condition for a Hamiltonian to keep states inside the DFS,
/// specialized to v' = v: max ||[H, D(v)]||_F over random real v, plus the
/// leakage of exp(i theta H)|psi> for random DFS states and angles.
VerificationReport theorem_check(const HermitianMatrix& h, int v_samples,
                                 double tol = 1e-10, std::uint64_t seed = 0);

}  // namespace dfsforge
