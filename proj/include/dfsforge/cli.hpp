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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dfsforge/report.hpp"

namespace dfsforge::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  OutputFormat format = OutputFormat::kJson;
  std::string output_path = "-";  // "-" is standard output
};

/// Thrown for invalid command arguments; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"dfs", "gates", "cphase", "distance2", "theorem",
                                               "all"};
  return suites;
}

/// Runs one verification suite. Throws UsageError for unknown names.
VerificationReport run_verify_suite(std::string_view suite, const RunConfig& config);

struct TrotterRow {
  int n;
  double error;
};

struct TrotterSweep {
  std::string formula;
  std::vector<TrotterRow> rows;
  std::optional<double> slope;  // least-squares log-log slope, needs >= 2 rows
  VerificationReport report{"trotter_sweep"};
};

/// formula "sum": A = sx, B = sz, alpha = beta = 1 against exp(i(A + B)).
/// formula "product": A = sx, B = sy against exp(-[A, B]).
TrotterSweep trotter_sweep(std::string_view formula, const std::vector<int>& n_values);
std::vector<int> default_trotter_n_values(std::string_view formula);

/// Least-squares slope of log(error) against log(n).
double loglog_slope(const std::vector<TrotterRow>& rows);

struct MeasureOptions {
  int shots = 1000;
  int rounds = 3;
  double p_ancilla = 0.0;
  std::string input_state = "zero";  // zero | one | plus
  std::string shots_csv_path;        // optional extra per-shot CSV in JSON mode
};

int cmd_verify(std::string_view suite, const RunConfig& config, std::ostream& out,
               std::ostream& err);
int cmd_trotter_sweep(std::string_view formula, const std::vector<int>& n_values,
                      const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_measure(const MeasureOptions& options, const RunConfig& config, std::ostream& out,
                std::ostream& err);
int cmd_noise(int trials, std::string_view state, const RunConfig& config, std::ostream& out,
              std::ostream& err);

}  // namespace dfsforge::cli
