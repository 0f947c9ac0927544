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

#include "dfsforge/noise.hpp"

#include <numbers>

#include "dfsforge/report.hpp"

namespace dfsforge {

CollectiveChannel sample_collective_channel(int count, std::uint64_t seed) {
  CollectiveChannel channel;
  for (int t = 0; t < count; ++t) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(t));
    channel.samples.push_back(random_rotation_vector(rng, std::numbers::pi));
  }
  return channel;
}

nlohmann::ordered_json FidelityReport::to_json() const {
  nlohmann::ordered_json j;
  j["trials"] = trials;
  j["min_fidelity"] = json_number(min_fidelity);
  j["mean_fidelity"] = json_number(mean_fidelity);
  j["max_leakage"] = json_number(max_leakage);
  return j;
}

StateVector apply_collective(const StateVector& s, const RotationVector& v) {
  const Eigen::Matrix2cd g = collective_factor(v);
  StateVector out = s;
  for (int q = 1; q <= s.num_qubits(); ++q) {
    out = apply_local(single_qubit(q, g), out);
  }
  return out;
}

FidelityReport collective_fidelity_sweep(const std::vector<StateVector>& states, int trials,
                                         std::uint64_t seed) {
  if (trials < 0) throw std::invalid_argument("collective_fidelity_sweep: negative trials");
  FidelityReport report;
  report.trials = trials;
  if (trials == 0 || states.empty()) return report;
  const int k = states.front().num_qubits();
  for (const auto& s : states) {
    if (s.num_qubits() != k) {
      throw std::invalid_argument("collective_fidelity_sweep: states differ in qubit count");
    }
  }
  const DfsBasis dfs = dfs_basis(k);
  const CollectiveChannel channel = sample_collective_channel(trials, seed);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : channel.samples) {
    for (const auto& s : states) {
      const StateVector out = apply_collective(s, v);
      const double f = fidelity(s, out);
      report.min_fidelity = std::min(report.min_fidelity, f);
      report.max_leakage = std::max(report.max_leakage, dfs.leakage(out.amplitudes()));
      sum += f;
      ++count;
    }
  }
  report.mean_fidelity = sum / static_cast<double>(count);
  return report;
}

StateVector single_qubit_error(const StateVector& s, PauliAxis axis, int qubit) {
  return apply_local(single_qubit(qubit, pauli(axis)), s);
}

double detection_statistic(const StateVector& s, const LogicalFrame& frame) {
  if (s.num_qubits() != frame.num_physical()) {
    throw std::invalid_argument("detection_statistic: state does not match frame");
  }
  return frame.leakage(s.amplitudes());
}

}  // namespace dfsforge
