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

#include "dfsforge/ftmeas.hpp"

#include <cmath>
#include <string>

#include "dfsforge/gates.hpp"

namespace dfsforge {

namespace {

constexpr std::array<PauliAxis, 4> kMeasuredAxes{PauliAxis::kZ, PauliAxis::kZ, PauliAxis::kX,
                                                 PauliAxis::kX};

// Single-qubit eigenstate of sigma_axis with the given eigenvalue.
ComplexVector eigenstate(PauliAxis axis, int outcome) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v(2);
  if (axis == PauliAxis::kZ) {
    v << (outcome == 1 ? 1.0 : 0.0), (outcome == 1 ? 0.0 : 1.0);
  } else {
    v << r, (outcome == 1 ? r : -r);
  }
  return v;
}

ComplexMatrix pattern_projector(const OutcomePattern& pattern) {
  ComplexMatrix p = ComplexMatrix::Ones(1, 1);
  for (std::size_t m = 0; m < 4; ++m) {
    const ComplexVector e = eigenstate(kMeasuredAxes[m], pattern[m]);
    p = kron(p, e * e.adjoint());
  }
  return p;
}

long long choose(int n, int r) {
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace

int pattern_index(const OutcomePattern& pattern) {
  int index = 0;
  for (std::size_t m = 0; m < 4; ++m) {
    if (pattern[m] != 1 && pattern[m] != -1) {
      throw std::invalid_argument("pattern_index: outcomes must be +1 or -1");
    }
    index = (index << 1) | (pattern[m] == -1 ? 1 : 0);
  }
  return index;
}

OutcomePattern pattern_from_index(int index) {
  if (index < 0 || index >= kPatternCount) {
    throw std::out_of_range("pattern_from_index: index outside [0, 16)");
  }
  OutcomePattern p{};
  for (int m = 0; m < 4; ++m) {
    p[static_cast<std::size_t>(m)] = ((index >> (3 - m)) & 1) ? -1 : 1;
  }
  return p;
}

double ClassifierTable::overlap() const {
  double total = 0.0;
  for (int i = 0; i < kPatternCount; ++i) {
    total += std::min(prob_zero[static_cast<std::size_t>(i)], prob_one[static_cast<std::size_t>(i)]);
  }
  return total;
}

std::array<double, kPatternCount> pattern_distribution(const StateVector& s, int first_qubit) {
  if (first_qubit < 1 || first_qubit + 3 > s.num_qubits()) {
    throw std::out_of_range("pattern_distribution: cluster outside the register");
  }
  std::array<double, kPatternCount> probs{};
  const std::vector<int> support{first_qubit, first_qubit + 1, first_qubit + 2, first_qubit + 3};
  for (int i = 0; i < kPatternCount; ++i) {
    const LocalOperator projector(support, pattern_projector(pattern_from_index(i)));
    probs[static_cast<std::size_t>(i)] =
        apply_local(projector, s.amplitudes(), s.num_qubits()).squaredNorm();
  }
  return probs;
}

ClassifierTable build_classifier() {
  ClassifierTable table;
  table.prob_zero = pattern_distribution(logical_zero());
  table.prob_one = pattern_distribution(logical_one());
  constexpr double kSupportTol = 1e-12;
  for (std::size_t i = 0; i < kPatternCount; ++i) {
    const bool from_zero = table.prob_zero[i] > kSupportTol;
    const bool from_one = table.prob_one[i] > kSupportTol;
    if (from_zero && from_one) {
      throw NumericError("build_classifier: pattern " + std::to_string(i) +
                             " occurs for both logical states",
                         std::min(table.prob_zero[i], table.prob_one[i]));
    }
    table.bit[i] = from_one ? 1 : 0;
  }
  return table;
}

DestructiveResult destructive_measure(const StateVector& s, const ClassifierTable& table,
                                      std::mt19937_64& rng, int first_qubit) {
  if (first_qubit < 1 || first_qubit + 3 > s.num_qubits()) {
    throw std::out_of_range("destructive_measure: cluster outside the register");
  }
  DestructiveResult result{0, {}, 1.0, s};
  for (std::size_t m = 0; m < 4; ++m) {
    auto outcome = measure_pauli(result.post, kMeasuredAxes[m], first_qubit + static_cast<int>(m), rng);
    result.outcomes[m] = outcome.outcome;
    result.probability *= outcome.probability;
    result.post = std::move(outcome.post);
  }
  result.bit = table.classify(result.outcomes);
  return result;
}

int majority_vote(std::span<const int> bits) {
  if (bits.size() % 2 == 0) {
    throw std::invalid_argument("majority_vote: need an odd number of votes");
  }
  std::size_t ones = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("majority_vote: votes must be 0 or 1");
    ones += static_cast<std::size_t>(b);
  }
  return 2 * ones > bits.size() ? 1 : 0;
}

double majority_failure_probability(double p, int rounds) {
  double total = 0.0;
  for (int k = rounds / 2 + 1; k <= rounds; ++k) {
    total += static_cast<double>(choose(rounds, k)) * std::pow(p, k) * std::pow(1.0 - p, rounds - k);
  }
  return total;
}

nlohmann::ordered_json MeasurementRecord::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["rounds"] = rounds;
  j["outcomes"] = outcomes;
  j["ancilla_faults"] = ancilla_faults;
  j["voted"] = voted;
  j["voted_bit"] = voted_bit();
  return j;
}

MeasurementRecord nondestructive_zbar(const StateVector& data, int rounds, double p_ancilla,
                                      std::uint64_t seed) {
  if (data.num_qubits() != kClusterSize) {
    throw std::invalid_argument("nondestructive_zbar: data must be a 4-qubit cluster");
  }
  if (rounds < 1 || rounds % 2 == 0) {
    throw std::invalid_argument("nondestructive_zbar: rounds must be odd and positive");
  }
  if (!(p_ancilla >= 0.0 && p_ancilla < 0.5)) {
    throw std::invalid_argument("nondestructive_zbar: ancilla error probability outside [0, 1/2)");
  }
  static const ClassifierTable table = build_classifier();
  const ComplexMatrix& cnot = encoded_cnot().unitary;
  const StateVector good_ancilla = logical_zero();
  const StateVector bad_ancilla = logical_one();

  std::mt19937_64 rng(seed);
  MeasurementRecord record{{}, {}, 1, data, seed, rounds};
  std::vector<int> bits;
  for (int r = 0; r < rounds; ++r) {
    const bool faulty = uniform01(rng) < p_ancilla;
    const StateVector joint = tensor(record.post_state, faulty ? bad_ancilla : good_ancilla);
    const StateVector entangled(joint.num_qubits(), cnot * joint.amplitudes());
    const DestructiveResult measured =
        destructive_measure(entangled, table, rng, kClusterSize + 1);

    ComplexMatrix ancilla_state = ComplexMatrix::Ones(1, 1);
    for (std::size_t m = 0; m < 4; ++m) {
      ancilla_state = kron(ancilla_state, eigenstate(kMeasuredAxes[m], measured.outcomes[m]));
    }
    record.post_state =
        contract_trailing(measured.post, StateVector(kClusterSize, ancilla_state));
    record.outcomes.push_back(zbar_eigenvalue(measured.bit));
    record.ancilla_faults.push_back(faulty);
    bits.push_back(measured.bit);
  }
  record.voted = zbar_eigenvalue(majority_vote(bits));
  return record;
}

PreparedState prepare_logical_zero(double p_fault, std::mt19937_64& rng) {
  if (!(p_fault >= 0.0 && p_fault <= 1.0)) {
    throw std::invalid_argument("prepare_logical_zero: fault probability outside [0, 1]");
  }
  if (uniform01(rng) < p_fault) {
    static constexpr std::array<TripletM, 3> kTriplets{TripletM::kMinus, TripletM::kZero,
                                                       TripletM::kPlus};
    const TripletM m = kTriplets[static_cast<std::size_t>(uniform01(rng) * 3.0)];
    return {tensor(triplet(m), singlet()), m};
  }
  return {logical_zero(), std::nullopt};
}

PreparationStats verify_preparation(const StateVector& s, int rounds, int shots,
                                    std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("verify_preparation: shots must be positive");
  const StateVector target = logical_zero();
  PreparationStats stats;
  stats.shots = shots;
  double fidelity_sum = 0.0;
  for (int i = 0; i < shots; ++i) {
    const auto record = nondestructive_zbar(s, rounds, 0.0, derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (record.voted_bit() != 0) continue;
    ++stats.accepted;
    const double f = fidelity(record.post_state, target);
    stats.min_post_fidelity = std::min(stats.min_post_fidelity, f);
    fidelity_sum += f;
  }
  stats.acceptance_rate = static_cast<double>(stats.accepted) / shots;
  if (stats.accepted > 0) stats.mean_post_fidelity = fidelity_sum / stats.accepted;
  return stats;
}

double single_round_acceptance(const StateVector& s) {
  static const ClassifierTable table = build_classifier();
  const int n = 2 * kClusterSize;
  const StateVector joint = tensor(s, logical_zero());
  const ComplexVector entangled = encoded_cnot().unitary * joint.amplitudes();
  std::vector<int> ancilla{5, 6, 7, 8};
  double accept = 0.0;
  for (int i = 0; i < kPatternCount; ++i) {
    if (table.bit[static_cast<std::size_t>(i)] != 0) continue;
    const ComplexMatrix projector =
        embed_full(LocalOperator(ancilla, pattern_projector(pattern_from_index(i))), n);
    accept += (projector * entangled).squaredNorm();
  }
  return accept;
}

}  // namespace dfsforge
