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

#include "dfsforge/report.hpp"

#include <algorithm>
#include <cmath>

namespace dfsforge {

bool VerificationReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(),
                     [](const CheckResult& c) { return c.passed; });
}

void VerificationReport::add(CheckResult check) { checks_.push_back(std::move(check)); }

void VerificationReport::add_bound(std::string name, double residual, double tol,
                                   std::string details) {
  // NaN residuals fail.
  const bool ok = std::isfinite(residual) && residual <= tol;
  checks_.push_back({std::move(name), ok, residual, std::move(details)});
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.checks_) {
    checks_.push_back({other.suite_ + "/" + c.name, c.passed, c.residual, c.details});
  }
}

double VerificationReport::max_residual(const std::string& prefix) const {
  double worst = 0.0;
  for (const auto& c : checks_) {
    if (c.name.rfind(prefix, 0) == 0) worst = std::max(worst, c.residual);
  }
  return worst;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = suite_;
  j["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["residual"] = json_number(c.residual);
    cj["details"] = c.details;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j;
}

}  // namespace dfsforge
