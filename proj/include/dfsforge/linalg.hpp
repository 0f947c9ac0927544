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

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dfsforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Thrown when a matrix or state would exceed the configured dimension cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when a numerical routine fails; carries the residual that tripped it.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Maximum row/column count for any dense object. Defaults to 2^14 and can be
/// overridden through the DFSFORGE_DIM_CAP environment variable.
std::size_t dimension_cap();

/// Throws SizeError if `dim` exceeds dimension_cap().
void require_within_cap(std::size_t dim, const char* what);

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

ComplexMatrix identity(Eigen::Index dim);

/// Pauli matrices in the computational basis.
const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||U U^dag - I||_F.
double unitarity_residual(const ComplexMatrix& u);

/// ||M - M^dag||_F.
double hermiticity_residual(const ComplexMatrix& m);

/// Square matrix with M = M^dag up to 1e-12 relative Frobenius error.
///
/// The eigendecomposition is computed lazily on first use and shared between
/// copies, so exponentiating the same Hamiltonian at many angles costs one
/// diagonalization.
class HermitianMatrix {
 public:
  struct Spectrum {
    RealVector values;
    ComplexMatrix vectors;
  };

  explicit HermitianMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  /// Eigenvalues (ascending) and unitary eigenvector matrix. Thread-safe.
  const Spectrum& spectrum() const;

 private:
  struct Cache;
  ComplexMatrix matrix_;
  std::shared_ptr<Cache> cache_;
};

/// exp(i * theta * h) via h = V diag(lambda) V^dag.
ComplexMatrix hermitian_expm(const HermitianMatrix& h, double theta);

/// exp(m) for a general square matrix (scaling and squaring). Only used where
/// the generator is not Hermitian, e.g. complex stabilizer parameters.
ComplexMatrix general_expm(const ComplexMatrix& m);

inline constexpr double kDefaultNullspaceTol = 1e-10;

/// Orthonormal basis of {v : m v = 0}. Singular values at or below
/// tol * sigma_max count as zero.
std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m,
                                           double tol = kDefaultNullspaceTol);

/// Stacks matrices with equal column counts vertically.
ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks);

}  // namespace dfsforge
