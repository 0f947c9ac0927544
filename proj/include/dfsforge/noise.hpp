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

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "dfsforge/collective.hpp"
#include "dfsforge/encoding.hpp"
#include "dfsforge/hilbert.hpp"

namespace dfsforge {

/// Collective rotations D(v) = exp(i v.S) for real v; the errors a DFS is
/// immune to.
struct CollectiveChannel {
  std::vector<RotationVector> samples;
};

/// Draws `count` rotation vectors with |v| <= pi from derived per-sample streams.
CollectiveChannel sample_collective_channel(int count, std::uint64_t seed);

struct FidelityReport {
  int trials = 0;
  double min_fidelity = 1.0;
  double mean_fidelity = 1.0;
  double max_leakage = 0.0;

  nlohmann::ordered_json to_json() const;
};

/// D(v)|s> applied qubit by qubit.
StateVector apply_collective(const StateVector& s, const RotationVector& v);

/// For each trial, draws one v and applies it to every state, recording the
/// fidelity to the input and the leakage out of the k-qubit DFS. Trial t uses
/// the stream derived from (seed, t). trials = 0 gives mean = min = 1.
FidelityReport collective_fidelity_sweep(const std::vector<StateVector>& states, int trials,
                                         std::uint64_t seed);

/// sigma_axis applied to `qubit`.
StateVector single_qubit_error(const StateVector& s, PauliAxis axis, int qubit);

/// ||(I - P) s|| for the frame's encoded projector P.
double detection_statistic(const StateVector& s, const LogicalFrame& frame);

}  // namespace dfsforge
