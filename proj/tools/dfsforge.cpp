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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dfsforge/cli.hpp"
#include "dfsforge/linalg.hpp"

namespace cli = dfsforge::cli;

int main(int argc, char** argv) {
  CLI::App app{"dfsforge: decoherence-free subspace verification"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig config;
  std::string format = "json";
  app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  app.add_option("--tolerance", config.tolerance, "Numerical tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", config.output_path, "Output path, '-' for stdout")->capture_default_str();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "dfs | gates | cphase | distance2 | theorem | all")->required();

  std::string formula;
  std::vector<int> n_values;
  auto* sweep = app.add_subcommand("trotter-sweep", "Trotter error convergence");
  sweep->add_option("formula", formula, "sum | product")->required();
  sweep->add_option("--n", n_values, "Ascending step counts");

  cli::MeasureOptions measure_opts;
  auto* measure = app.add_subcommand("measure", "Fault-tolerant Z-bar measurement");
  measure->add_option("--shots", measure_opts.shots)->capture_default_str();
  measure->add_option("--rounds", measure_opts.rounds)->capture_default_str();
  measure->add_option("--p-ancilla", measure_opts.p_ancilla)->capture_default_str();
  measure->add_option("--state", measure_opts.input_state, "zero | one | plus")
      ->capture_default_str();
  measure->add_option("--shots-csv", measure_opts.shots_csv_path, "Also write per-shot CSV here");

  int trials = 1000;
  std::string noise_state = "encoded-random";
  auto* noise = app.add_subcommand("noise", "Collective-noise fidelity sweep");
  noise->add_option("--trials", trials)->capture_default_str();
  noise->add_option("--state", noise_state, "encoded-random | product")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }
  config.format = format == "csv" ? cli::OutputFormat::kCsv : cli::OutputFormat::kJson;

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (config.output_path != "-") {
    file.open(config.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << config.output_path << '\n';
      return cli::kExitUsage;
    }
    out = &file;
  }

  try {
    if (*verify) return cli::cmd_verify(suite, config, *out, std::cerr);
    if (*sweep) return cli::cmd_trotter_sweep(formula, n_values, config, *out, std::cerr);
    if (*measure) return cli::cmd_measure(measure_opts, config, *out, std::cerr);
    if (*noise) return cli::cmd_noise(trials, noise_state, config, *out, std::cerr);
  } catch (const dfsforge::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFail;
  }
  return cli::kExitUsage;
}
