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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dfsforge/cli.hpp"
#include "dfsforge/collective.hpp"
#include "dfsforge/encoding.hpp"
#include "dfsforge/ftmeas.hpp"
#include "dfsforge/gates.hpp"
#include "dfsforge/noise.hpp"

using namespace dfsforge;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void bound(const std::string& what, double value, double limit) {
    std::ostringstream s;
    s << what << "=" << value << " (limit " << limit << ")";
    require(value <= limit, s.str());
    if (value <= limit) note(s.str());
  }
  void note(const std::string& what) {
    if (passed) summary += (summary.empty() ? "" : ", ") + what;
  }
  std::string summary;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double binomial_tail(double p, int r) {
  double tail = 0.0;
  for (int k = r / 2 + 1; k <= r; ++k) {
    tail += static_cast<double>(choose(r, k)) * std::pow(p, k) * std::pow(1 - p, r - k);
  }
  return tail;
}

ComplexMatrix swap_on(int i, int j, int n) {
  return embed_full(exchange(ExchangePair(i, j), n), n);
}

void dfs_condition(Outcome& o) {
  double worst = 0.0;
  for (const auto& b : {logical_zero(), logical_one()}) {
    for (auto axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
      worst = std::max(worst, apply_collective_sum(axis, b.amplitudes(), 4).norm());
    }
  }
  o.bound("max||S_a b||", worst, 1e-12);
}

void dfs_dimensions(Outcome& o) {
  const int expected[] = {1, 2, 5, 14};
  int idx = 0;
  for (int k : {2, 4, 6, 8}) {
    const auto ops = collective_operators(k);
    const auto null = nullspace_basis(vstack({ops.sx, ops.sy, ops.sz}));
    const long long formula = choose(k, k / 2) - choose(k, k / 2 + 1);
    const long long got = static_cast<long long>(null.size());
    o.require(got == expected[idx], "k=" + std::to_string(k) + " nullspace dim " + std::to_string(got));
    o.require(got == formula, "k=" + std::to_string(k) + " formula mismatch");
    o.require(dfs_basis(k).dimension() == got, "dfs_basis disagrees at k=" + std::to_string(k));
    o.note("k=" + std::to_string(k) + ":" + std::to_string(got));
    ++idx;
  }
}

void gate_matrices(Outcome& o) {
  const LogicalFrame frame(1);
  Eigen::Matrix2cd e13;
  e13 << 0.5, -std::sqrt(3.0) / 2, -std::sqrt(3.0) / 2, -0.5;
  const auto z = logical_action(ComplexMatrix(-swap_on(1, 2, 4)), frame);
  const auto n = logical_action(swap_on(1, 3, 4), frame);
  const auto x = logical_action(encoded_x_hamiltonian(), frame);
  double entry = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      entry = std::max(entry, std::abs(z.matrix(r, c) - pauli_z()(r, c)));
      entry = std::max(entry, std::abs(n.matrix(r, c) - e13(r, c)));
      entry = std::max(entry, std::abs(x.matrix(r, c) - pauli_x()(r, c)));
    }
  }
  o.bound("max entry error", entry, 1e-12);
  o.bound("leakage", std::max({z.residual_leakage, n.residual_leakage, x.residual_leakage}), 1e-12);
}

void controlled_phase_checks(Outcome& o) {
  const LogicalFrame frame(2);
  const ComplexMatrix& c = c_hamiltonian().matrix();
  double action = 0.0;
  for (Eigen::Index x = 0; x < 4; ++x) {
    const ComplexVector v = frame.basis().col(x);
    action = std::max(action, (c * v - (x == 1 ? v : ComplexVector::Zero(256))).norm());
  }
  o.bound("c action", action, 1e-10);
  ComplexMatrix target = identity(4);
  target(1, 1) = -1.0;
  o.bound("C_P(pi) error", (controlled_phase(pi).matrix - target).norm(), 1e-10);
  std::mt19937_64 rng(2024);
  double leak = 0.0;
  for (int t = 0; t < 10; ++t) {
    leak = std::max(leak, controlled_phase(2 * pi * uniform01(rng)).residual_leakage);
  }
  o.bound("random-theta leakage", leak, 1e-10);
}

void theorem_and_pulses(Outcome& o) {
  double commut = 0.0;
  for (const auto& g : gate_generators()) {
    const auto r = theorem_check(g.hamiltonian, kStabilizerSamples, 1e-10, 0);
    commut = std::max(commut, r.find("stabilizer_commutator")->residual);
    o.require(r.passed(), g.name + " failed theorem check");
  }
  o.bound("max||[H,D(v)]||", commut, 1e-10);

  const LogicalFrame one(1), two(2);
  std::vector<StateVector> pair_inputs;
  for (Eigen::Index x = 0; x < 4; ++x) pair_inputs.push_back(two.basis_state(x));
  double leak = 0.0;
  leak = std::max(leak, max_schedule_leakage(encoded_hadamard().schedule, one,
                                             {logical_zero(), logical_one()}));
  leak = std::max(leak, max_schedule_leakage(encoded_not().schedule, one,
                                             {logical_zero(), logical_one()}));
  leak = std::max(leak, max_schedule_leakage(encoded_hadamard(1, 8).schedule, two, pair_inputs));
  leak = std::max(leak, max_schedule_leakage(encoded_cnot().before, two, pair_inputs));
  leak = std::max(leak, max_schedule_leakage(encoded_cnot().after, two, pair_inputs));
  // The controlled-phase segment sampled at the same interior fractions.
  for (int s = 1; s <= 10; ++s) {
    const ComplexMatrix u = controlled_phase_unitary(encoded_cnot().cphase_angle * s / 11.0);
    for (const auto& in : pair_inputs) leak = std::max(leak, two.leakage(u * in.amplitudes()));
  }
  o.bound("mid-pulse leakage", leak, 1e-10);
}

void trotter_scaling(Outcome& o) {
  const auto sum = cli::trotter_sweep("sum", cli::default_trotter_n_values("sum"));
  const auto prod = cli::trotter_sweep("product", cli::default_trotter_n_values("product"));
  const double s1 = *sum.slope, s2 = *prod.slope;
  o.require(s1 >= -1.2 && s1 <= -0.8, "sum slope " + std::to_string(s1));
  o.require(s2 >= -0.7 && s2 <= -0.3, "product slope " + std::to_string(s2));
  o.note("sum slope " + std::to_string(s1));
  o.note("product slope " + std::to_string(s2));
  const HermitianMatrix a{ComplexMatrix(pauli_z())};
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 0.4, -0.9;
  const HermitianMatrix b(d);
  const ComplexMatrix exact = hermitian_expm(HermitianMatrix(ComplexMatrix(a.matrix() + d)), 1.0);
  o.bound("commuting n=1 sum", (trotter_sum(a, b, 1.0, 1.0, 1) - exact).norm(), 1e-12);
  o.bound("commuting n=1 product", (lie_product(a, b, 1) - identity(2)).norm(), 1e-12);
}

void distance_two(Outcome& o) {
  double off = 0.0, gap = 0.0;
  const ComplexVector z = logical_zero().amplitudes(), one = logical_one().amplitudes();
  for (int q = 1; q <= 4; ++q) {
    for (auto axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
      const auto op = single_qubit(q, pauli(axis));
      const ComplexVector ez = apply_local(op, z, 4), eo = apply_local(op, one, 4);
      off = std::max(off, std::abs(z.dot(eo)));
      gap = std::max(gap, std::abs(z.dot(ez) - one.dot(eo)));
    }
  }
  o.bound("max|<0|E|1>|", off, 1e-12);
  o.bound("max|<0|E|0>-<1|E|1>|", gap, 1e-12);
  o.require(distance2_report(1e-12).passed(), "distance2_report failed");
}

void collective_immunity(Outcome& o) {
  std::mt19937_64 rng(99);
  std::vector<StateVector> states;
  for (int i = 0; i < 4; ++i) {
    ComplexVector a(2);
    a << Complex(standard_normal(rng), standard_normal(rng)),
        Complex(standard_normal(rng), standard_normal(rng));
    states.push_back(encode(a.normalized(), 1));
  }
  const auto enc = collective_fidelity_sweep(states, 200, 5);
  o.bound("1-min fidelity", 1.0 - enc.min_fidelity, 1e-12);
  o.bound("leakage", enc.max_leakage, 1e-12);
  const auto prod = collective_fidelity_sweep({basis_state("0000")}, 200, 5);
  o.require(prod.min_fidelity < 0.99, "product-state min fidelity " + std::to_string(prod.min_fidelity));
  o.note("|0000> min fidelity " + std::to_string(prod.min_fidelity));
}

void measurement_protocol(Outcome& o) {
  const auto table = build_classifier();
  o.bound("classifier overlap", table.overlap(), 1e-12);
  std::mt19937_64 rng(7);
  int errors = 0;
  for (int shot = 0; shot < 1000; ++shot) {
    errors += destructive_measure(logical_zero(), table, rng).bit != 0;
    errors += destructive_measure(logical_one(), table, rng).bit != 1;
  }
  o.require(errors == 0, "destructive errors " + std::to_string(errors));
  o.note("destructive errors 0/2000");

  double worst = 1.0;
  int flips = 0;
  for (int shot = 0; shot < 200; ++shot) {
    for (int bit : {0, 1}) {
      const auto& s = bit == 0 ? logical_zero() : logical_one();
      const auto r = nondestructive_zbar(s, 3, 0.0, derive_seed(11, 2 * shot + bit));
      const auto again = nondestructive_zbar(r.post_state, 3, 0.0, derive_seed(12, 2 * shot + bit));
      flips += (r.voted_bit() != bit) + (again.voted != r.voted);
      worst = std::min({worst, fidelity(r.post_state, s), fidelity(again.post_state, s)});
    }
  }
  o.require(flips == 0, "nondestructive repeat mismatches " + std::to_string(flips));
  o.bound("1-post fidelity", 1.0 - worst, 1e-9);

  const int shots = 10000;
  int voted_errors = 0;
  for (int shot = 0; shot < shots; ++shot) {
    voted_errors += nondestructive_zbar(logical_one(), 3, 0.1, derive_seed(13, shot)).voted_bit() != 1;
  }
  const double p_fail = binomial_tail(0.1, 3);
  const double rate = voted_errors / double(shots);
  const double sigma = std::sqrt(p_fail * (1 - p_fail) / shots);
  o.require(std::abs(rate - p_fail) <= 5 * sigma, "voted error rate " + std::to_string(rate));
  o.note("voted error rate " + std::to_string(rate) + " vs " + std::to_string(p_fail));
}

void cnot_truth_table(Outcome& o) {
  const LogicalFrame frame(2);
  const auto& cnot = encoded_cnot();
  const int target[] = {0, 1, 3, 2};
  double worst = 1.0;
  for (int x = 0; x < 4; ++x) {
    worst = std::min(worst, fidelity(StateVector(8, cnot.unitary * frame.basis().col(x)),
                                     frame.basis_state(target[x])));
  }
  o.bound("1-min fidelity", 1.0 - worst, 1e-9);
  const auto sq = logical_action(ComplexMatrix(cnot.unitary * cnot.unitary), frame);
  o.bound("||CX^2 - I|| mod phase", phase_insensitive_distance(sq.matrix, identity(4)), 1e-9);
}

void determinism(Outcome& o) {
  const auto run = [](const std::function<int(std::ostream&, std::ostream&)>& f) {
    std::ostringstream out, err;
    f(out, err);
    return out.str();
  };
  cli::RunConfig config;
  config.seed = 31337;
  cli::RunConfig csv = config;
  csv.format = cli::OutputFormat::kCsv;
  cli::MeasureOptions mopts;
  mopts.shots = 300;
  mopts.p_ancilla = 0.1;
  mopts.input_state = "plus";
  std::vector<std::pair<std::string, std::function<int(std::ostream&, std::ostream&)>>> commands;
  for (const auto& suite : cli::verify_suites()) {
    if (suite == "all") continue;
    commands.emplace_back("verify " + suite, [suite, config](auto& out, auto& err) {
      return cli::cmd_verify(suite, config, out, err);
    });
  }
  commands.emplace_back("trotter-sweep sum", [config](auto& out, auto& err) {
    return cli::cmd_trotter_sweep("sum", {}, config, out, err);
  });
  commands.emplace_back("trotter-sweep product csv", [csv](auto& out, auto& err) {
    return cli::cmd_trotter_sweep("product", {}, csv, out, err);
  });
  commands.emplace_back("measure", [mopts, config](auto& out, auto& err) {
    return cli::cmd_measure(mopts, config, out, err);
  });
  commands.emplace_back("measure csv", [mopts, csv](auto& out, auto& err) {
    return cli::cmd_measure(mopts, csv, out, err);
  });
  commands.emplace_back("noise", [config](auto& out, auto& err) {
    return cli::cmd_noise(200, "encoded-random", config, out, err);
  });
  commands.emplace_back("noise product", [config](auto& out, auto& err) {
    return cli::cmd_noise(1, "product", config, out, err);
  });
  for (const auto& [name, f] : commands) {
    const std::string a = run(f), b = run(f);
    o.require(!a.empty() && a == b, name + " output differs between runs");
  }
  o.note(std::to_string(commands.size()) + " commands byte-identical");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "DFS condition", 1.0, dfs_condition},
      {2, "DFS dimensions", 30.0, dfs_dimensions},
      {3, "Encoded gate matrices", 1.0, gate_matrices},
      {4, "Controlled phase", 60.0, controlled_phase_checks},
      {5, "No leakage during gates", 60.0, theorem_and_pulses},
      {6, "Trotter scaling", 30.0, trotter_scaling},
      {7, "Distance-2 detection", 1.0, distance_two},
      {8, "Collective immunity", 10.0, collective_immunity},
      {9, "Measurement protocol", 300.0, measurement_protocol},
      {10, "CNOT truth table", 60.0, cnot_truth_table},
      {11, "Determinism", 600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
      outcome.require(false, "runtime " + std::to_string(seconds) + " s exceeds " +
                                 std::to_string(c.time_limit_s) + " s");
    }
    failures += !outcome.passed;
    std::printf("%s [%2d] %-26s %7.3fs  %s\n", outcome.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), seconds,
                outcome.passed ? outcome.summary.c_str() : outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
