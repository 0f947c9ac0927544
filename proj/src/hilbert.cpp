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

#include "dfsforge/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dfsforge {

namespace {

constexpr double kNormTol = 1e-12;

void require_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  require_within_cap(std::size_t{1} << n, "state");
}

void require_support_in_range(const LocalOperator& op, int n) {
  for (int q : op.support()) {
    if (q < 1 || q > n) {
      throw std::out_of_range("operator support qubit " + std::to_string(q) +
                              " outside [1, " + std::to_string(n) + "]");
    }
  }
}

}  // namespace

StateVector::StateVector(int num_qubits, ComplexVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  require_qubit_count(num_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("StateVector: expected 2^n amplitudes");
  }
  require_finite(amplitudes_, "StateVector");
  const double norm = amplitudes_.norm();
  if (norm < 1e-300) {
    throw std::invalid_argument("StateVector: zero vector cannot be normalized");
  }
  if (std::abs(norm - 1.0) > kNormTol) {
    amplitudes_ /= norm;
  }
}

StateVector StateVector::from_normalized(int num_qubits, ComplexVector amplitudes,
                                         double tol) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("StateVector: input norm " + std::to_string(norm) +
                                " is not 1");
  }
  return StateVector(num_qubits, std::move(amplitudes));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("inner: qubit count mismatch");
  }
  return amplitudes_.dot(other.amplitudes_);
}

LocalOperator::LocalOperator(std::vector<int> support, ComplexMatrix matrix)
    : support_(std::move(support)), matrix_(std::move(matrix)) {
  if (support_.empty()) {
    throw std::invalid_argument("LocalOperator: empty support");
  }
  auto sorted = support_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("LocalOperator: repeated qubit in support");
  }
  if (sorted.front() < 1) {
    throw std::out_of_range("LocalOperator: qubit indices are 1-based");
  }
  const Eigen::Index dim = Eigen::Index{1} << support_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("LocalOperator: matrix dimension does not match support");
  }
  require_finite(matrix_, "LocalOperator");
}

const Eigen::Matrix2cd& pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::kX:
      return pauli_x();
    case PauliAxis::kY:
      return pauli_y();
    case PauliAxis::kZ:
      break;
  }
  return pauli_z();
}

char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::kX:
      return 'x';
    case PauliAxis::kY:
      return 'y';
    case PauliAxis::kZ:
      break;
  }
  return 'z';
}

LocalOperator single_qubit(int qubit, const ComplexMatrix& m) {
  return LocalOperator({qubit}, m);
}

StateVector basis_state(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  require_qubit_count(n);
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("basis_state: expected only '0' and '1'");
    }
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << n);
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n, std::move(amps));
}

ComplexVector apply_local(const LocalOperator& op, const ComplexVector& amplitudes,
                          int num_qubits) {
  require_support_in_range(op, num_qubits);
  if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("apply_local: amplitude count does not match qubit count");
  }
  const auto& support = op.support();
  const int k = static_cast<int>(support.size());
  const Eigen::Index local_dim = Eigen::Index{1} << k;

  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(local_dim), 0);
  Eigen::Index mask = 0;
  for (Eigen::Index m = 0; m < local_dim; ++m) {
    Eigen::Index off = 0;
    for (int t = 0; t < k; ++t) {
      if ((m >> (k - 1 - t)) & 1) {
        off |= Eigen::Index{1} << bit_of(support[static_cast<std::size_t>(t)], num_qubits);
      }
    }
    offsets[static_cast<std::size_t>(m)] = off;
    mask |= off;
  }

  ComplexVector out = amplitudes;
  ComplexVector gathered(local_dim);
  const ComplexMatrix& mat = op.matrix();
  for (Eigen::Index base = 0; base < amplitudes.size(); ++base) {
    if (base & mask) continue;
    for (Eigen::Index m = 0; m < local_dim; ++m) {
      gathered[m] = amplitudes[base | offsets[static_cast<std::size_t>(m)]];
    }
    const ComplexVector result = mat * gathered;
    for (Eigen::Index m = 0; m < local_dim; ++m) {
      out[base | offsets[static_cast<std::size_t>(m)]] = result[m];
    }
  }
  return out;
}

StateVector apply_local(const LocalOperator& op, const StateVector& s) {
  ComplexVector out = apply_local(op, s.amplitudes(), s.num_qubits());
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("apply_local: operator is not norm-preserving on this state");
  }
  return StateVector(s.num_qubits(), std::move(out));
}

ComplexMatrix embed_full(const LocalOperator& op, int num_qubits) {
  require_qubit_count(num_qubits);
  require_support_in_range(op, num_qubits);
  const auto& support = op.support();
  const int k = static_cast<int>(support.size());
  const ComplexMatrix reordered = kron(op.matrix(), identity(Eigen::Index{1} << (num_qubits - k)));

  // Tensor-factor order of `reordered`: support qubits first, then the rest
  // in ascending order.
  std::vector<int> order(support.begin(), support.end());
  for (int q = 1; q <= num_qubits; ++q) {
    if (std::find(support.begin(), support.end(), q) == support.end()) {
      order.push_back(q);
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(dim));
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::Index p = 0;
    for (int pos = 0; pos < num_qubits; ++pos) {
      const int q = order[static_cast<std::size_t>(pos)];
      const Eigen::Index bit = (x >> bit_of(q, num_qubits)) & 1;
      p |= bit << (num_qubits - 1 - pos);
    }
    perm[static_cast<std::size_t>(x)] = p;
  }
  ComplexMatrix full(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      full(r, c) = reordered(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]);
    }
  }
  return full;
}

namespace {

ComplexMatrix pauli_projector(PauliAxis axis, int outcome) {
  return 0.5 * (Eigen::Matrix2cd::Identity() + static_cast<double>(outcome) * pauli(axis));
}

}  // namespace

double pauli_plus_probability(const StateVector& s, PauliAxis axis, int qubit) {
  const ComplexVector plus =
      apply_local(single_qubit(qubit, pauli_projector(axis, +1)), s.amplitudes(), s.num_qubits());
  return std::clamp(plus.squaredNorm(), 0.0, 1.0);
}

PauliMeasurement project_pauli(const StateVector& s, PauliAxis axis, int qubit,
                               int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("project_pauli: outcome must be +1 or -1");
  }
  ComplexVector projected = apply_local(single_qubit(qubit, pauli_projector(axis, outcome)),
                                        s.amplitudes(), s.num_qubits());
  const double prob = projected.squaredNorm();
  if (prob <= 1e-14) {
    throw std::invalid_argument("project_pauli: outcome has zero probability");
  }
  return {outcome, StateVector(s.num_qubits(), std::move(projected)), std::min(prob, 1.0)};
}

PauliMeasurement measure_pauli(const StateVector& s, PauliAxis axis, int qubit,
                               std::mt19937_64& rng) {
  const double p_plus = pauli_plus_probability(s, axis, qubit);
  const int outcome = uniform01(rng) < p_plus ? +1 : -1;
  return project_pauli(s, axis, qubit, outcome);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity: qubit count mismatch");
  }
  return std::min(1.0, std::norm(a.inner(b)));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  require_qubit_count(n);
  return StateVector(n, kron(a.amplitudes(), b.amplitudes()));
}

StateVector contract_trailing(const StateVector& s, const StateVector& phi) {
  const int lead = s.num_qubits() - phi.num_qubits();
  if (lead < 1) {
    throw std::invalid_argument("contract_trailing: phi must cover fewer qubits than s");
  }
  const Eigen::Index lead_dim = Eigen::Index{1} << lead;
  const Eigen::Index tail_dim = phi.dim();
  ComplexVector out(lead_dim);
  for (Eigen::Index i = 0; i < lead_dim; ++i) {
    out[i] = phi.amplitudes().dot(s.amplitudes().segment(i * tail_dim, tail_dim));
  }
  return StateVector(lead, std::move(out));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t index) {
  std::uint64_t z = root_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 derived_rng(std::uint64_t root_seed, std::uint64_t index) {
  return std::mt19937_64(derive_seed(root_seed, index));
}

}  // namespace dfsforge
