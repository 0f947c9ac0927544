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

#include "dfsforge/collective.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace dfsforge {

namespace {

constexpr std::uint64_t kFixedSampleSeed = 0x5EEDCA11ULL;
constexpr int kMaxStackedSvdQubits = 8;
constexpr int kMaxCrossCheckQubits = 8;

void require_collective_size(int k) {
  if (k < 1 || k > kMaxQubits) {
    throw std::invalid_argument("collective: qubit count " + std::to_string(k) +
                                " outside [1, 12]");
  }
  require_within_cap(std::size_t{1} << k, "collective");
}

ComplexMatrix sum_of_paulis(PauliAxis axis, int k) {
  const Eigen::Index dim = Eigen::Index{1} << k;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int j = 1; j <= k; ++j) {
    out += embed_full(single_qubit(j, pauli(axis)), k);
  }
  return out;
}

Complex sinc(Complex r) {
  if (std::abs(r) < 1e-4) {
    const Complex r2 = r * r;
    return 1.0 - r2 / 6.0 + r2 * r2 / 120.0;
  }
  return std::sin(r) / r;
}

StabilizerParams to_complex(const RotationVector& v) {
  return {Complex(v[0]), Complex(v[1]), Complex(v[2])};
}

bool is_real(const StabilizerParams& v) {
  return v[0].imag() == 0.0 && v[1].imag() == 0.0 && v[2].imag() == 0.0;
}

long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (int i = 1; i <= r; ++i) {
    out = out * (n - r + i) / i;
  }
  return out;
}

ComplexMatrix columns_of(const std::vector<ComplexVector>& vs, Eigen::Index rows) {
  ComplexMatrix m(rows, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = vs[c];
  }
  return m;
}

// Spin-0 states are the S_+ kernel inside the S_z = 0 sector. S_+ only has
// 0/1 entries between sectors of fixed popcount, so it is built directly.
ComplexMatrix spin_zero_by_sector(int k) {
  const int half = k / 2;
  const Eigen::Index dim = Eigen::Index{1} << k;
  std::vector<Eigen::Index> source;
  std::vector<Eigen::Index> target_index(static_cast<std::size_t>(dim), -1);
  Eigen::Index targets = 0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    const int ones = std::popcount(static_cast<std::uint64_t>(x));
    if (ones == half) source.push_back(x);
    if (ones == half - 1) target_index[static_cast<std::size_t>(x)] = targets++;
  }
  // sigma_+ = |0><1| raises the S_z eigenvalue, i.e. clears a set bit.
  ComplexMatrix raise = ComplexMatrix::Zero(targets, static_cast<Eigen::Index>(source.size()));
  for (std::size_t c = 0; c < source.size(); ++c) {
    const Eigen::Index x = source[c];
    for (int b = 0; b < k; ++b) {
      if ((x >> b) & 1) {
        raise(target_index[static_cast<std::size_t>(x & ~(Eigen::Index{1} << b))],
              static_cast<Eigen::Index>(c)) = 1.0;
      }
    }
  }
  const auto kernel = nullspace_basis(raise);
  ComplexMatrix basis = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t c = 0; c < kernel.size(); ++c) {
    for (std::size_t r = 0; r < source.size(); ++r) {
      basis(source[r], static_cast<Eigen::Index>(c)) = kernel[c][static_cast<Eigen::Index>(r)];
    }
  }
  return basis;
}

}  // namespace

const ComplexMatrix& CollectiveOperators::operator[](PauliAxis axis) const {
  switch (axis) {
    case PauliAxis::kX:
      return sx;
    case PauliAxis::kY:
      return sy;
    case PauliAxis::kZ:
      break;
  }
  return sz;
}

CollectiveOperators collective_operators(int k) {
  require_collective_size(k);
  return {k, sum_of_paulis(PauliAxis::kX, k), sum_of_paulis(PauliAxis::kY, k),
          sum_of_paulis(PauliAxis::kZ, k)};
}

ComplexVector apply_collective_sum(PauliAxis axis, const ComplexVector& amplitudes, int k) {
  ComplexVector out = ComplexVector::Zero(amplitudes.size());
  for (int j = 1; j <= k; ++j) {
    out += apply_local(single_qubit(j, pauli(axis)), amplitudes, k);
  }
  return out;
}

Eigen::Matrix2cd collective_factor(const StabilizerParams& v) {
  const Complex r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const Eigen::Matrix2cd generator = v[0] * pauli_x() + v[1] * pauli_y() + v[2] * pauli_z();
  return std::cos(r) * Eigen::Matrix2cd::Identity() + kI * sinc(r) * generator;
}

Eigen::Matrix2cd collective_factor(const RotationVector& v) {
  return collective_factor(to_complex(v));
}

StabilizerElement stabilizer_element(const StabilizerParams& v, int k) {
  require_collective_size(k);
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("stabilizer_element: non-finite parameter");
    }
  }
  StabilizerElement out;
  out.v = v;
  out.num_qubits = k;
  const Eigen::Matrix2cd g = collective_factor(v);
  ComplexMatrix product = g;
  for (int j = 1; j < k; ++j) {
    product = kron(product, g);
  }
  if (k <= kMaxCrossCheckQubits) {
    const auto ops = collective_operators(k);
    const ComplexMatrix generator = v[0] * ops.sx + v[1] * ops.sy + v[2] * ops.sz;
    const ComplexMatrix exponential =
        is_real(v) ? hermitian_expm(HermitianMatrix(generator), 1.0)
                   : general_expm(kI * generator);
    out.cross_check_residual = (exponential - product).norm();
    const double scale = std::max(1.0, product.norm());
    if (out.cross_check_residual > 1e-10 * scale) {
      throw NumericError("stabilizer_element: product form disagrees with exp(i v.S)",
                         out.cross_check_residual);
    }
  }
  out.matrix = std::move(product);
  return out;
}

StabilizerElement stabilizer_element(const RotationVector& v, int k) {
  return stabilizer_element(to_complex(v), k);
}

ComplexVector apply_stabilizer(const StabilizerParams& v, const ComplexVector& amplitudes,
                               int k) {
  const Eigen::Matrix2cd g = collective_factor(v);
  ComplexVector out = amplitudes;
  for (int j = 1; j <= k; ++j) {
    out = apply_local(single_qubit(j, g), out, k);
  }
  return out;
}

RotationVector random_rotation_vector(std::mt19937_64& rng, double max_norm) {
  const double cos_theta = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  const double magnitude = max_norm * uniform01(rng);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {magnitude * sin_theta * std::cos(phi), magnitude * sin_theta * std::sin(phi),
          magnitude * cos_theta};
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DfsBasis::DfsBasis(int num_qubits, ComplexMatrix basis)
    : num_qubits_(num_qubits), basis_(std::move(basis)) {
  if (basis_.rows() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("DfsBasis: basis rows must equal 2^k");
  }
}

std::vector<StateVector> DfsBasis::vectors() const {
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(basis_.cols()));
  for (Eigen::Index c = 0; c < basis_.cols(); ++c) {
    out.emplace_back(num_qubits_, basis_.col(c));
  }
  return out;
}

ComplexMatrix DfsBasis::projector() const { return basis_ * basis_.adjoint(); }

ComplexVector DfsBasis::project(const ComplexVector& amplitudes) const {
  return basis_ * (basis_.adjoint() * amplitudes);
}

double DfsBasis::leakage(const ComplexVector& amplitudes) const {
  return (amplitudes - project(amplitudes)).norm();
}

int dfs_dimension(int k) {
  if (k < 0 || k % 2 != 0) {
    throw std::invalid_argument("dfs_dimension: qubit count must be even and non-negative");
  }
  return static_cast<int>(binomial(k, k / 2) - binomial(k, k / 2 + 1));
}

DfsBasis dfs_basis(int k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("dfs_basis: qubit count must be even and >= 2");
  }
  require_collective_size(k);
  if (k > kMaxStackedSvdQubits) {
    return DfsBasis(k, spin_zero_by_sector(k));
  }
  const auto ops = collective_operators(k);
  const auto kernel = nullspace_basis(vstack({ops.sx, ops.sy, ops.sz}));
  return DfsBasis(k, columns_of(kernel, Eigen::Index{1} << k));
}

StateVector random_dfs_state(const DfsBasis& basis, std::mt19937_64& rng) {
  if (basis.dimension() == 0) {
    throw std::invalid_argument("random_dfs_state: empty DFS");
  }
  ComplexVector coeffs(basis.dimension());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = Complex(standard_normal(rng), standard_normal(rng));
  }
  return StateVector(basis.num_qubits(), basis.basis() * coeffs);
}

VerificationReport check_dfs_condition(const std::vector<StateVector>& states, int k,
                                       double tol) {
  VerificationReport report("dfs_condition");
  double collective_residual = 0.0;
  double stabilizer_residual = 0.0;
  std::mt19937_64 rng(kFixedSampleSeed);
  std::vector<StabilizerParams> samples;
  for (int s = 0; s < kStabilizerSamples; ++s) {
    samples.push_back(to_complex(random_rotation_vector(rng, std::numbers::pi)));
  }
  for (const auto& psi : states) {
    if (psi.num_qubits() != k) {
      throw std::invalid_argument("check_dfs_condition: state is not a k-qubit state");
    }
    for (PauliAxis axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
      collective_residual =
          std::max(collective_residual, apply_collective_sum(axis, psi.amplitudes(), k).norm());
    }
    for (const auto& v : samples) {
      stabilizer_residual = std::max(
          stabilizer_residual, (apply_stabilizer(v, psi.amplitudes(), k) - psi.amplitudes()).norm());
    }
  }
  report.add_bound("collective_annihilation", collective_residual, tol,
                   "max ||S_alpha psi|| over states and alpha");
  report.add_bound("stabilizer_invariance", stabilizer_residual, tol,
                   "max ||D(v) psi - psi|| over 20 random real v, |v| <= pi");
  return report;
}

VerificationReport theorem_check(const HermitianMatrix& h, int v_samples, double tol,
                                 std::uint64_t seed) {
  const Eigen::Index dim = h.dim();
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::invalid_argument("theorem_check: dimension must be 2^k");
  }
  const int k = std::countr_zero(static_cast<std::uint64_t>(dim));
  VerificationReport report("theorem");
  std::mt19937_64 rng(seed ^ kFixedSampleSeed);

  double commutator_norm = 0.0;
  for (int s = 0; s < v_samples; ++s) {
    const auto d = stabilizer_element(random_rotation_vector(rng, std::numbers::pi), k);
    commutator_norm = std::max(commutator_norm, commutator(h.matrix(), d.matrix).norm());
  }
  report.add_bound("stabilizer_commutator", commutator_norm, tol,
                   "max ||H D(v) - D(v) H||_F over " + std::to_string(v_samples) + " real v");

  if (k % 2 != 0) {
    report.add({"dynamical_leakage", true, 0.0, "odd qubit count: DFS is empty"});
    return report;
  }
  const DfsBasis dfs = dfs_basis(k);
  double leakage = 0.0;
  for (int s = 0; s < v_samples; ++s) {
    const StateVector psi = random_dfs_state(dfs, rng);
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const ComplexVector evolved = hermitian_expm(h, theta) * psi.amplitudes();
    leakage = std::max(leakage, dfs.leakage(evolved));
  }
  report.add_bound("dynamical_leakage", leakage, tol,
                   "max ||(I - P_DFS) exp(i theta H) psi|| over random DFS psi, theta");
  return report;
}

}  // namespace dfsforge
