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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "dfsforge/encoding.hpp"
#include "dfsforge/hilbert.hpp"
#include "dfsforge/report.hpp"

namespace dfsforge {

inline constexpr int kPatternCount = 16;

/// Outcomes of (sigma_z, sigma_z, sigma_x, sigma_x) on the four qubits of a
/// cluster, each +1 or -1.
using OutcomePattern = std::array<int, 4>;

/// Bit 3 - m is set when measurement m (0-based, in the order z z x x) gave -1.
int pattern_index(const OutcomePattern& pattern);
OutcomePattern pattern_from_index(int index);

/// Maps each destructive-measurement pattern to a logical bit.
struct ClassifierTable {
  std::array<int, kPatternCount> bit{};
  std::array<double, kPatternCount> prob_zero{};
  std::array<double, kPatternCount> prob_one{};

  int classify(const OutcomePattern& pattern) const { return bit[pattern_index(pattern)]; }
  /// sum_p min(P0(p), P1(p)).
  double overlap() const;
};

/// Exact pattern distribution of the z z x x measurement on the cluster
/// starting at `first_qubit`.
std::array<double, kPatternCount> pattern_distribution(const StateVector& s, int first_qubit = 1);

/// Assigns each pattern to |0_L> or |1_L> according to which state can
/// produce it; patterns neither can produce map to 0. Throws NumericError if
/// the supports overlap.
ClassifierTable build_classifier();

struct DestructiveResult {
  int bit = 0;
  OutcomePattern outcomes{};
  /// Probability of the sampled pattern.
  double probability = 0.0;
  /// Full state after the four projections.
  StateVector post;
};

/// Measures sigma_z, sigma_z, sigma_x, sigma_x (in that order) on qubits
/// first_qubit .. first_qubit + 3 and classifies the pattern.
DestructiveResult destructive_measure(const StateVector& s, const ClassifierTable& table,
                                      std::mt19937_64& rng, int first_qubit = 1);

/// Majority element of an odd-length list of bits.
int majority_vote(std::span<const int> bits);

/// Probability that a majority of `rounds` independent rounds are wrong.
double majority_failure_probability(double p, int rounds);

/// Zbar eigenvalue +1 <-> bit 0, -1 <-> bit 1.
inline constexpr int zbar_eigenvalue(int bit) { return bit == 0 ? 1 : -1; }
inline constexpr int bit_from_eigenvalue(int eigenvalue) { return eigenvalue == 1 ? 0 : 1; }

struct MeasurementRecord {
  std::vector<int> outcomes;  // Zbar eigenvalue reported by each ancilla round
  std::vector<bool> ancilla_faults;
  int voted = 1;
  StateVector post_state;
  std::uint64_t seed = 0;
  int rounds = 0;

  int voted_bit() const { return bit_from_eigenvalue(voted); }
  nlohmann::ordered_json to_json() const;
};

/// Nondestructive Zbar measurement of a 4-qubit data cluster. Each round
/// prepares a |0_L> ancilla (|1_L> with probability p_ancilla), applies the
/// encoded CNOT with the data as control, measures the ancilla destructively
/// and keeps the collapsed data state. The rounds are majority-voted.
MeasurementRecord nondestructive_zbar(const StateVector& data, int rounds, double p_ancilla,
                                      std::uint64_t seed);

struct PreparedState {
  StateVector state;
  /// Set when the first singlet pair was replaced by this triplet.
  std::optional<TripletM> fault;
};

/// |s>|s>, or with probability p_fault the first pair in a uniformly random
/// triplet state.
PreparedState prepare_logical_zero(double p_fault, std::mt19937_64& rng);

struct PreparationStats {
  int shots = 0;
  int accepted = 0;
  double acceptance_rate = 0.0;
  /// Over accepted shots; 1 when nothing was accepted.
  double min_post_fidelity = 1.0;
  double mean_post_fidelity = 1.0;
};

/// Runs nondestructive_zbar (fault-free ancillas) `shots` times on s and
/// accepts when the voted bit is 0. Shot i uses derive_seed(seed, i).
PreparationStats verify_preparation(const StateVector& s, int rounds, int shots,
                                    std::uint64_t seed);

/// Acceptance probability of one fault-free verification round, computed
/// from full-space pattern projectors.
double single_round_acceptance(const StateVector& s);

}  // namespace dfsforge
