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

#include <string>
#include <vector>

#include <json.hpp>

namespace dfsforge {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string details;
};

/// Pass/fail record emitted by every verification routine. A report passes
/// iff every check passes; an empty report passes vacuously.
class VerificationReport {
 public:
  static constexpr const char* kSchemaVersion = "1";

  explicit VerificationReport(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const noexcept { return suite_; }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  bool passed() const;

  void add(CheckResult check);
  /// Records `residual <= tol` as a check.
  void add_bound(std::string name, double residual, double tol, std::string details = {});
  void merge(const VerificationReport& other);

  /// Largest residual among checks with the given name prefix (0 if none).
  double max_residual(const std::string& prefix = {}) const;
  const CheckResult* find(const std::string& name) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::string suite_;
  std::vector<CheckResult> checks_;
};

/// JSON-safe number: non-finite values become null.
nlohmann::ordered_json json_number(double value);

}  // namespace dfsforge
