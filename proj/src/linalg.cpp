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

#include "dfsforge/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace dfsforge {

namespace {
constexpr std::size_t kDefaultDimCap = std::size_t{1} << 14;
constexpr double kHermitianRelTol = 1e-12;
}  // namespace

std::size_t dimension_cap() {
  if (const char* env = std::getenv("DFSFORGE_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return kDefaultDimCap;
}

void require_within_cap(std::size_t dim, const char* what) {
  const std::size_t cap = dimension_cap();
  if (dim > cap) {
    throw SizeError(std::string(what) + ": dimension " + std::to_string(dim) +
                    " exceeds cap " + std::to_string(cap));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

const Eigen::Matrix2cd& pauli_x() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  return m;
}

const Eigen::Matrix2cd& pauli_y() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << 0, -kI, kI, 0).finished();
  return m;
}

const Eigen::Matrix2cd& pauli_z() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  require_within_cap(rows, "kron");
  require_within_cap(cols, "kron");
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double unitarity_residual(const ComplexMatrix& u) {
  return (u * u.adjoint() - identity(u.rows())).norm();
}

double hermiticity_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm();
}

struct HermitianMatrix::Cache {
  std::once_flag once;
  Spectrum spectrum;
};

HermitianMatrix::HermitianMatrix(ComplexMatrix m)
    : matrix_(std::move(m)), cache_(std::make_shared<Cache>()) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square and non-empty");
  }
  require_finite(matrix_, "HermitianMatrix");
  const double residual = hermiticity_residual(matrix_);
  if (residual > kHermitianRelTol * matrix_.norm()) {
    throw std::invalid_argument("HermitianMatrix: ||M - M^dag||_F = " +
                                std::to_string(residual) + " is not Hermitian");
  }
  // Symmetrize so the eigensolver sees an exactly Hermitian input.
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
}

const HermitianMatrix::Spectrum& HermitianMatrix::spectrum() const {
  std::call_once(cache_->once, [this] {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_);
    if (solver.info() != Eigen::Success) {
      throw NumericError("hermitian eigendecomposition did not converge",
                         std::numeric_limits<double>::infinity());
    }
    const ComplexMatrix& v = solver.eigenvectors();
    const double residual =
        (v * solver.eigenvalues().cast<Complex>().asDiagonal() * v.adjoint() - matrix_).norm();
    if (residual > 1e-10 * std::max(1.0, matrix_.norm())) {
      throw NumericError("hermitian eigendecomposition residual too large", residual);
    }
    cache_->spectrum.values = solver.eigenvalues();
    cache_->spectrum.vectors = v;
  });
  return cache_->spectrum;
}

ComplexMatrix hermitian_expm(const HermitianMatrix& h, double theta) {
  const auto& spec = h.spectrum();
  ComplexVector phases(spec.values.size());
  for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
    phases[k] = std::polar(1.0, theta * spec.values[k]);
  }
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

ComplexMatrix general_expm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("general_expm: matrix must be square");
  }
  require_finite(m, "general_expm");
  ComplexMatrix out = m.exp();
  if (!out.allFinite()) {
    throw NumericError("general_expm produced non-finite entries",
                       std::numeric_limits<double>::infinity());
  }
  return out;
}

std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("nullspace_basis: tol must be positive");
  }
  require_finite(m, "nullspace_basis");
  const Eigen::Index cols = m.cols();
  std::vector<ComplexVector> basis;
  if (cols == 0) {
    return basis;
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
  const double cutoff = tol * sigma_max;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
      if (sigma[k] > cutoff) ++rank;
    }
  }
  const ComplexMatrix& v = svd.matrixV();
  basis.reserve(static_cast<std::size_t>(cols - rank));
  for (Eigen::Index k = rank; k < cols; ++k) {
    basis.emplace_back(v.col(k));
  }
  return basis;
}

ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) {
    return {};
  }
  const Eigen::Index cols = blocks.front().cols();
  Eigen::Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) {
      throw std::invalid_argument("vstack: column count mismatch");
    }
    rows += b.rows();
  }
  ComplexMatrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.middleRows(offset, b.rows()) = b;
    offset += b.rows();
  }
  return out;
}

}  // namespace dfsforge
