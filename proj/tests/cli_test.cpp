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

#include "dfsforge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace dfsforge::cli {
namespace {

using json = nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Run capture(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

bool all_residuals_finite(const json& report) {
  for (const auto& c : report["checks"]) {
    if (!c["residual"].is_number() || !std::isfinite(c["residual"].get<double>())) return false;
  }
  return true;
}

TEST(Verify, FastSuitesPass) {
  RunConfig config;
  for (const char* suite : {"dfs", "gates", "cphase", "distance2"}) {
    const auto r = capture([&](auto& o, auto& e) { return cmd_verify(suite, config, o, e); });
    EXPECT_EQ(r.code, kExitPass) << suite;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_EQ(j["suite"], suite);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_TRUE(all_residuals_finite(j));
  }
}

TEST(Verify, DfsSuiteReportsFourteenDimensions) {
  const auto report = run_verify_suite("dfs", RunConfig{});
  const auto* c = report.find("fourteen_dim_dfs_k8");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->passed);
}

TEST(Verify, CphaseSuiteContainsPiGate) {
  const auto report = run_verify_suite("cphase", RunConfig{});
  ASSERT_NE(report.find("cphase_pi"), nullptr);
  EXPECT_TRUE(report.passed());
}

TEST(Verify, TheoremSuiteIncludesNegativeControl) {
  const auto report = run_verify_suite("theorem", RunConfig{});
  EXPECT_TRUE(report.passed());
  const auto* neg = report.find("sigma_x_negative_control");
  ASSERT_NE(neg, nullptr);
  EXPECT_GT(neg->residual, 1.0);
}

TEST(Verify, UnknownSuiteIsUsageError) {
  const auto r = capture([](auto& o, auto& e) { return cmd_verify("bogus", RunConfig{}, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Verify, ExitCodeTracksFailures) {
  RunConfig strict;
  strict.tolerance = 1e-300;
  const auto r = capture([&](auto& o, auto& e) { return cmd_verify("gates", strict, o, e); });
  const auto j = json::parse(r.out);
  EXPECT_EQ(r.code, j["passed"].get<bool>() ? kExitPass : kExitFail);
  EXPECT_EQ(r.code, kExitFail);
}

TEST(TrotterSweep, SlopesInBands) {
  const auto sum = trotter_sweep("sum", default_trotter_n_values("sum"));
  ASSERT_TRUE(sum.slope.has_value());
  EXPECT_GE(*sum.slope, -1.2);
  EXPECT_LE(*sum.slope, -0.8);
  EXPECT_EQ(sum.rows.front().n, 2);
  EXPECT_EQ(sum.rows.back().n, 256);
  const auto product = trotter_sweep("product", default_trotter_n_values("product"));
  ASSERT_TRUE(product.slope.has_value());
  EXPECT_GE(*product.slope, -0.7);
  EXPECT_LE(*product.slope, -0.3);
  EXPECT_EQ(product.rows.front().n, 4);
  EXPECT_EQ(product.rows.back().n, 1024);
}

TEST(TrotterSweep, SingleValueOmitsSlope) {
  const auto r = capture([](auto& o, auto& e) {
    return cmd_trotter_sweep("sum", {8}, RunConfig{}, o, e);
  });
  EXPECT_EQ(r.code, kExitPass);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 1u);
  EXPECT_TRUE(j["slope"].is_null());
}

TEST(TrotterSweep, CsvRows) {
  RunConfig config;
  config.format = OutputFormat::kCsv;
  const auto r = capture([&](auto& o, auto& e) {
    return cmd_trotter_sweep("product", {4, 16, 64}, config, o, e);
  });
  EXPECT_EQ(r.code, kExitPass);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,error");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(TrotterSweep, RejectsBadInput) {
  for (const std::vector<int>& ns : {std::vector<int>{8, 4}, std::vector<int>{0, 2}}) {
    const auto r = capture([&](auto& o, auto& e) {
      return cmd_trotter_sweep("sum", ns, RunConfig{}, o, e);
    });
    EXPECT_EQ(r.code, kExitUsage);
  }
  const auto r = capture([](auto& o, auto& e) {
    return cmd_trotter_sweep("midpoint", {}, RunConfig{}, o, e);
  });
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_THROW(trotter_sweep("sum", {}), UsageError);
}

TEST(LoglogSlope, ExactPowerLaw) {
  std::vector<TrotterRow> rows;
  for (int n = 1; n <= 64; n *= 2) rows.push_back({n, 3.0 * std::pow(n, -1.5)});
  EXPECT_NEAR(loglog_slope(rows), -1.5, 1e-12);
  EXPECT_THROW(loglog_slope({rows.front()}), std::invalid_argument);
}

TEST(Measure, ZeroStateIdealAncillas) {
  MeasureOptions opts;
  opts.shots = 1000;
  const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, RunConfig{}, o, e); });
  EXPECT_EQ(r.code, kExitPass);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["bit_frequency"][0].get<double>(), 1.0);
  EXPECT_EQ(j["voted_error_rate"].get<double>(), 0.0);
  EXPECT_GE(j["min_post_fidelity"].get<double>(), 1 - 1e-9);
}

TEST(Measure, PlusStateIsFair) {
  MeasureOptions opts;
  opts.input_state = "plus";
  opts.shots = 1000;
  RunConfig config;
  config.seed = 3;
  const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, config, o, e); });
  EXPECT_EQ(r.code, kExitPass);
  const double f0 = json::parse(r.out)["bit_frequency"][0].get<double>();
  EXPECT_LE(std::abs(f0 - 0.5), 5 * std::sqrt(0.25 / 1000));
}

TEST(Measure, FaultyAncillasFollowBinomialTail) {
  MeasureOptions opts;
  opts.input_state = "one";
  opts.shots = 2000;
  opts.p_ancilla = 0.1;
  RunConfig config;
  config.seed = 5;
  const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, config, o, e); });
  EXPECT_EQ(r.code, kExitPass);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["expected_voted_error_rate"].get<double>(), 0.028, 1e-15);
}

TEST(Measure, CsvPerShotRows) {
  MeasureOptions opts;
  opts.shots = 5;
  opts.rounds = 3;
  RunConfig config;
  config.format = OutputFormat::kCsv;
  const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, config, o, e); });
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "seed,outcomes,voted_bit");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",1;1;1,0"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Measure, ShotsCsvSideFile) {
  const std::string path = ::testing::TempDir() + "dfsforge_shots.csv";
  MeasureOptions opts;
  opts.shots = 4;
  opts.shots_csv_path = path;
  const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, RunConfig{}, o, e); });
  EXPECT_EQ(r.code, kExitPass);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "seed,outcomes,voted_bit");
  std::remove(path.c_str());
}

TEST(Measure, RejectsBadArguments) {
  MeasureOptions even;
  even.rounds = 2;
  MeasureOptions bad_state;
  bad_state.input_state = "minus";
  MeasureOptions no_shots;
  no_shots.shots = 0;
  for (const auto& opts : {even, bad_state, no_shots}) {
    const auto r = capture([&](auto& o, auto& e) { return cmd_measure(opts, RunConfig{}, o, e); });
    EXPECT_EQ(r.code, kExitUsage);
  }
}

TEST(Noise, EncodedAndProduct) {
  const auto enc = capture([](auto& o, auto& e) { return cmd_noise(200, "encoded-random", RunConfig{}, o, e); });
  EXPECT_EQ(enc.code, kExitPass);
  EXPECT_GE(json::parse(enc.out)["fidelity"]["min_fidelity"].get<double>(), 1 - 1e-12);
  const auto prod = capture([](auto& o, auto& e) { return cmd_noise(200, "product", RunConfig{}, o, e); });
  EXPECT_EQ(prod.code, kExitPass);
  EXPECT_LT(json::parse(prod.out)["fidelity"]["min_fidelity"].get<double>(), 0.99);
  const auto bad = capture([](auto& o, auto& e) { return cmd_noise(0, "product", RunConfig{}, o, e); });
  EXPECT_EQ(bad.code, kExitUsage);
}

TEST(Determinism, ByteIdenticalReruns) {
  RunConfig config;
  config.seed = 77;
  MeasureOptions opts;
  opts.shots = 50;
  opts.p_ancilla = 0.2;
  opts.input_state = "plus";
  const auto m1 = capture([&](auto& o, auto& e) { return cmd_measure(opts, config, o, e); });
  const auto m2 = capture([&](auto& o, auto& e) { return cmd_measure(opts, config, o, e); });
  EXPECT_EQ(m1.out, m2.out);
  const auto n1 = capture([&](auto& o, auto& e) { return cmd_noise(1, "encoded-random", config, o, e); });
  const auto n2 = capture([&](auto& o, auto& e) { return cmd_noise(1, "encoded-random", config, o, e); });
  EXPECT_EQ(n1.out, n2.out);
  const auto v1 = capture([&](auto& o, auto& e) { return cmd_verify("cphase", config, o, e); });
  const auto v2 = capture([&](auto& o, auto& e) { return cmd_verify("cphase", config, o, e); });
  EXPECT_EQ(v1.out, v2.out);
  RunConfig other = config;
  other.seed = 78;
  const auto m3 = capture([&](auto& o, auto& e) { return cmd_measure(opts, other, o, e); });
  EXPECT_NE(m1.out, m3.out);
}

}  // namespace
}  // namespace dfsforge::cli
