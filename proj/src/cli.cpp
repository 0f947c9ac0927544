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
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dfsforge/collective.hpp"
#include "dfsforge/encoding.hpp"
#include "dfsforge/ftmeas.hpp"
#include "dfsforge/gates.hpp"
#include "dfsforge/noise.hpp"

namespace dfsforge::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kImmunityTol = 1e-12;
constexpr double kProductFidelityCeiling = 0.99;
constexpr double kSigmaBound = 5.0;

void add_exact(VerificationReport& report, const std::string& name, long long got,
               long long expected, const std::string& details) {
  report.add({name, got == expected, static_cast<double>(std::llabs(got - expected)),
              details + " (got " + std::to_string(got) + ", expected " +
                  std::to_string(expected) + ")"});
}

Matrix2 matrix2(Complex a, Complex b, Complex c, Complex d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

VerificationReport dfs_suite(const RunConfig& config) {
  const double tol = config.tolerance;
  VerificationReport report("dfs");
  report.merge(check_dfs_condition({logical_zero(), logical_one()}, 4, tol));
  auto singlets = check_dfs_condition({tensor(singlet(), singlet())}, 4, tol);
  for (const auto& c : singlets.checks()) {
    report.add({"singlet_pair/" + c.name, c.passed, c.residual, c.details});
  }
  for (int k : {2, 4, 6, 8}) {
    const auto basis = dfs_basis(k);
    add_exact(report, "nullspace_dimension_k" + std::to_string(k), basis.dimension(),
              dfs_dimension(k), "SVD joint-nullspace rank vs C(k,k/2) - C(k,k/2+1)");
    if (k == 4) add_exact(report, "two_state_dfs_k4", basis.dimension(), 2, "4-qubit DFS");
    if (k == 8) {
      add_exact(report, "fourteen_dim_dfs_k8", basis.dimension(), 14, "8-qubit DFS");
      const LogicalFrame frame(2);
      double leakage = 0.0;
      for (Eigen::Index x = 0; x < frame.logical_dim(); ++x) {
        leakage = std::max(leakage, basis.leakage(frame.basis().col(x)));
      }
      report.add_bound("encoded_pair_inside_k8_dfs", leakage, tol,
                       "max ||(I - P_8)|x_L y_L>|| over the 4 two-cluster basis states");
    }
  }
  return report;
}

VerificationReport gates_suite(const RunConfig& config) {
  const double tol = config.tolerance;
  VerificationReport report("gates");
  const LogicalFrame frame(1);
  const auto e = [](int i, int j) { return exchange_hamiltonian(ExchangePair(i, j), 4).matrix(); };

  const auto zbar = logical_action(ComplexMatrix(-e(1, 2)), frame);
  report.add_bound("zbar_is_minus_e12", (zbar.matrix - ComplexMatrix(pauli_z())).norm(), tol,
                   "||<-E12>_L - sigma_z||_F");
  report.add_bound("zbar_leakage", zbar.residual_leakage, tol);

  const double h = std::sqrt(3.0) / 2.0;
  const auto e13 = logical_action(e(1, 3), frame);
  report.add_bound("e13_matrix", (e13.matrix - ComplexMatrix(matrix2(0.5, -h, -h, -0.5))).norm(),
                   tol, "||<E13>_L - [[1/2,-sqrt3/2],[-sqrt3/2,-1/2]]||_F");
  report.add_bound("e13_leakage", e13.residual_leakage, tol);

  const auto xbar = logical_action(encoded_x_hamiltonian(), frame);
  report.add_bound("hx_is_sigma_x", (xbar.matrix - ComplexMatrix(pauli_x())).norm(), tol,
                   "||<H_x>_L - sigma_x||_F");
  report.add_bound("hx_leakage", xbar.residual_leakage, tol);

  const ComplexMatrix p = frame.projector();
  report.add_bound("e12_equals_e34_on_dfs", (p * e(1, 2) * p - p * e(3, 4) * p).norm(), tol,
                   "||P E12 P - P E34 P||_F");
  report.add_bound("e13_equals_e24_on_dfs", (p * e(1, 3) * p - p * e(2, 4) * p).norm(), tol,
                   "||P E13 P - P E24 P||_F");

  report.add_bound("zbar_xbar_anticommute",
                   (zbar.matrix * xbar.matrix + xbar.matrix * zbar.matrix).norm(), tol);

  double heisenberg = 0.0;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      heisenberg = std::max(heisenberg,
                            (embed_full(exchange_from_heisenberg(ExchangePair(i, j), 4), 4) -
                             embed_full(exchange(ExchangePair(i, j), 4), 4))
                                .norm());
    }
  }
  report.add_bound("exchange_equals_heisenberg", heisenberg, tol,
                   "max ||(I + S_i.S_j)/2 - E_ij||_F over pairs of 4 qubits");

  const StateVector flipped(4, rotation_x(std::numbers::pi) * logical_zero().amplitudes());
  report.add_bound("rotation_x_pi_flips", 1.0 - fidelity(flipped, logical_one()), tol,
                   "1 - |<1_L| Rx(pi) |0_L>|^2");

  const Matrix2 hadamard = matrix2(1.0, 1.0, 1.0, -1.0) / std::sqrt(2.0);
  const EncodedGate hbar = encoded_hadamard();
  const auto hbar_action = logical_action(hbar.unitary, frame);
  report.add_bound("hadamard_infidelity", gate_infidelity(hbar_action.matrix, hadamard), tol,
                   "1 - |Tr(H^dag <Hbar>_L)/2|^2");
  report.add_bound("hadamard_leakage", hbar_action.residual_leakage, tol);
  report.add_bound("hadamard_mid_pulse_leakage",
                   max_schedule_leakage(hbar.schedule, frame, {logical_zero(), logical_one()}),
                   tol, "10 interior samples per pulse");

  const LogicalFrame pair_frame(2);
  const CnotProgram& cnot = encoded_cnot();
  double truth = 0.0;
  for (Eigen::Index x = 0; x < 4; ++x) {
    const Eigen::Index expected = (x & 2) ? (x ^ 1) : x;
    const StateVector out(8, cnot.unitary * pair_frame.basis().col(x));
    truth = std::max(truth, 1.0 - fidelity(out, pair_frame.basis_state(expected)));
  }
  report.add_bound("cnot_truth_table", truth, tol, "max 1 - fidelity over |x_L y_L>");
  const auto squared = logical_action(ComplexMatrix(cnot.unitary * cnot.unitary), pair_frame);
  report.add_bound("cnot_involution", phase_insensitive_distance(squared.matrix, identity(4)), tol,
                   "CNOT^2 vs I on the encoded subspace, modulo phase");
  double cnot_pulse_leakage = 0.0;
  std::vector<StateVector> pair_inputs;
  for (Eigen::Index x = 0; x < 4; ++x) pair_inputs.push_back(pair_frame.basis_state(x));
  for (const auto* schedule : {&cnot.before, &cnot.after}) {
    cnot_pulse_leakage =
        std::max(cnot_pulse_leakage, max_schedule_leakage(*schedule, pair_frame, pair_inputs));
  }
  report.add_bound("cnot_mid_pulse_leakage", cnot_pulse_leakage, tol,
                   "single-cluster layers of the CNOT program");
  return report;
}

VerificationReport cphase_suite(const RunConfig& config) {
  const double tol = config.tolerance;
  VerificationReport report("cphase");
  const LogicalFrame frame(2);
  const ComplexMatrix& c = c_hamiltonian().matrix();
  const char* labels[] = {"00", "01", "10", "11"};
  for (Eigen::Index x = 0; x < 4; ++x) {
    const ComplexVector v = frame.basis().col(x);
    const ComplexVector expected = x == 1 ? v : ComplexVector::Zero(v.size());
    report.add_bound(std::string("c_action_") + labels[x], (c * v - expected).norm(), tol,
                     x == 1 ? "||c|0_L 1_L> - |0_L 1_L>||" : "||c|x_L y_L>||");
  }
  report.add_bound("c_hermitian", hermiticity_residual(kCPrefactor * c_double_commutator()), tol);
  const ComplexVector v01 = frame.basis().col(1);
  const double literal = (v01.dot(c_double_commutator() * v01) / 32.0).real();
  report.add_bound("literal_prefactor_1_32_eigenvalue", std::abs(literal - 4.0), tol,
                   "<0_L 1_L| [h1,[h2,h1]]/32 |0_L 1_L> = 4, hence the 1/128 prefactor");

  const auto cp = controlled_phase(std::numbers::pi);
  ComplexMatrix expected = identity(4);
  expected(1, 1) = -1.0;
  report.add_bound("cphase_pi", (cp.matrix - expected).norm(), tol,
                   "||<C_P(pi)>_L - diag(1,-1,1,1)||_F");
  report.add_bound("cphase_pi_leakage", cp.residual_leakage, tol);

  std::mt19937_64 rng(derive_seed(config.seed, 0xC0));
  double leakage = 0.0;
  double off_diagonal = 0.0;
  double composition = 0.0;
  for (int s = 0; s < 10; ++s) {
    const double t1 = 2.0 * std::numbers::pi * uniform01(rng);
    const double t2 = 2.0 * std::numbers::pi * uniform01(rng);
    const auto g = controlled_phase(t1);
    leakage = std::max(leakage, g.residual_leakage);
    ComplexMatrix off = g.matrix;
    off.diagonal().setZero();
    off_diagonal = std::max(off_diagonal, off.norm());
    composition = std::max(composition, (controlled_phase_unitary(t1) * controlled_phase_unitary(t2) -
                                         controlled_phase_unitary(t1 + t2))
                                            .norm());
  }
  report.add_bound("cphase_random_theta_leakage", leakage, tol, "10 random theta");
  report.add_bound("cphase_diagonal", off_diagonal, tol, "off-diagonal norm, 10 random theta");
  report.add_bound("cphase_composition", composition, tol, "C_P(a) C_P(b) = C_P(a + b)");

  const auto dfs8 = dfs_basis(8);
  const ComplexMatrix p8 = dfs8.projector();
  report.add_bound("c_preserves_k8_dfs", ((identity(256) - p8) * c * p8).norm(), tol,
                   "||(I - P_8) c P_8||_F");
  return report;
}

VerificationReport theorem_suite(const RunConfig& config) {
  const double tol = config.tolerance;
  VerificationReport report("theorem");
  for (const auto& g : gate_generators()) {
    const auto r = theorem_check(g.hamiltonian, kStabilizerSamples, tol, config.seed);
    for (const auto& c : r.checks()) {
      report.add({g.name + "/" + c.name, c.passed, c.residual, c.details});
    }
  }
  const HermitianMatrix sigma_x_1(embed_full(single_qubit(1, pauli_x()), 4));
  const auto negative = theorem_check(sigma_x_1, kStabilizerSamples, tol, config.seed);
  const double residual = negative.find("stabilizer_commutator")->residual;
  report.add({"sigma_x_negative_control", !negative.passed(), residual,
              "sigma_x on qubit 1 must violate the commutation condition"});
  return report;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string format_double(double v) {
  // Shortest round-trip representation, same as the JSON writer.
  return json(v).dump();
}

}  // namespace

VerificationReport run_verify_suite(std::string_view suite, const RunConfig& config) {
  if (!(config.tolerance > 0.0)) throw UsageError("tolerance must be positive");
  if (suite == "dfs") return dfs_suite(config);
  if (suite == "gates") return gates_suite(config);
  if (suite == "cphase") return cphase_suite(config);
  if (suite == "distance2") {
    auto r = distance2_report(config.tolerance);
    VerificationReport named("distance2");
    for (const auto& c : r.checks()) named.add(c);
    return named;
  }
  if (suite == "theorem") return theorem_suite(config);
  if (suite == "all") {
    VerificationReport all("all");
    for (const auto& name : verify_suites()) {
      if (name != "all") all.merge(run_verify_suite(name, config));
    }
    return all;
  }
  throw UsageError("unknown suite '" + std::string(suite) + "'");
}

double loglog_slope(const std::vector<TrotterRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("loglog_slope: need at least two rows");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<int> default_trotter_n_values(std::string_view formula) {
  std::vector<int> ns;
  const int lo = formula == "product" ? 4 : 2;
  const int hi = formula == "product" ? 1024 : 256;
  for (int n = lo; n <= hi; n *= 2) ns.push_back(n);
  return ns;
}

TrotterSweep trotter_sweep(std::string_view formula, const std::vector<int>& n_values) {
  if (n_values.empty()) throw UsageError("trotter sweep needs at least one n value");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
      throw UsageError("n values must be positive and strictly ascending");
    }
  }
  TrotterSweep sweep;
  sweep.formula = std::string(formula);
  const HermitianMatrix a{ComplexMatrix(pauli_x())};
  double lo = 0.0, hi = 0.0;
  if (formula == "sum") {
    const HermitianMatrix b{ComplexMatrix(pauli_z())};
    const ComplexMatrix exact = hermitian_expm(HermitianMatrix(a.matrix() + b.matrix()), 1.0);
    for (int n : n_values) sweep.rows.push_back({n, (trotter_sum(a, b, 1.0, 1.0, n) - exact).norm()});
    lo = -1.2;
    hi = -0.8;
  } else if (formula == "product") {
    const HermitianMatrix b{ComplexMatrix(pauli_y())};
    const ComplexMatrix limit = lie_product_limit(a, b);
    for (int n : n_values) sweep.rows.push_back({n, (lie_product(a, b, n) - limit).norm()});
    lo = -0.7;
    hi = -0.3;
  } else {
    throw UsageError("unknown formula '" + std::string(formula) + "' (expected sum or product)");
  }
  for (const auto& r : sweep.rows) {
    if (!std::isfinite(r.error)) {
      sweep.report.add({"finite_errors", false, r.error, "n = " + std::to_string(r.n)});
    }
  }
  if (sweep.rows.size() >= 2) {
    sweep.slope = loglog_slope(sweep.rows);
    const double s = *sweep.slope;
    sweep.report.add({"loglog_slope", s >= lo && s <= hi, s,
                      "expected in [" + format_double(lo) + ", " + format_double(hi) + "]"});
  }
  return sweep;
}

int cmd_verify(std::string_view suite, const RunConfig& config, std::ostream& out,
               std::ostream& err) {
  try {
    const auto report = run_verify_suite(suite, config);
    if (config.format == OutputFormat::kCsv) {
      out << "name,passed,residual,details\n";
      for (const auto& c : report.checks()) {
        out << c.name << ',' << (c.passed ? "true" : "false") << ',' << format_double(c.residual)
            << ",\"" << c.details << "\"\n";
      }
    } else {
      write_json(out, report.to_json());
    }
    return report.passed() ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nusage: dfsforge verify {dfs|gates|cphase|distance2|theorem|all}\n";
    return kExitUsage;
  }
}

int cmd_trotter_sweep(std::string_view formula, const std::vector<int>& n_values,
                      const RunConfig& config, std::ostream& out, std::ostream& err) {
  TrotterSweep sweep;
  try {
    sweep = trotter_sweep(formula, n_values.empty() ? default_trotter_n_values(formula) : n_values);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.format == OutputFormat::kCsv) {
    out << "n,error\n";
    for (const auto& r : sweep.rows) out << r.n << ',' << format_double(r.error) << '\n';
  } else {
    json j;
    j["schema_version"] = VerificationReport::kSchemaVersion;
    j["command"] = "trotter-sweep";
    j["formula"] = sweep.formula;
    auto rows = json::array();
    for (const auto& r : sweep.rows) rows.push_back({{"n", r.n}, {"error", json_number(r.error)}});
    j["rows"] = std::move(rows);
    j["slope"] = sweep.slope ? json_number(*sweep.slope) : json(nullptr);
    j["report"] = sweep.report.to_json();
    write_json(out, j);
  }
  return sweep.report.passed() ? kExitPass : kExitFail;
}

int cmd_measure(const MeasureOptions& options, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  if (options.shots < 1) {
    err << "error: --shots must be at least 1\n";
    return kExitUsage;
  }
  if (options.rounds < 1 || options.rounds % 2 == 0) {
    err << "error: --rounds must be odd and positive\n";
    return kExitUsage;
  }
  if (!(options.p_ancilla >= 0.0 && options.p_ancilla < 0.5)) {
    err << "error: --p-ancilla must lie in [0, 0.5)\n";
    return kExitUsage;
  }
  const StateVector zero = logical_zero();
  const StateVector one = logical_one();
  std::optional<StateVector> input;
  int expected_bit = -1;  // -1: superposition
  if (options.input_state == "zero") {
    input = zero;
    expected_bit = 0;
  } else if (options.input_state == "one") {
    input = one;
    expected_bit = 1;
  } else if (options.input_state == "plus") {
    input = encode(ComplexVector::Constant(2, 1.0 / std::sqrt(2.0)), 1);
  } else {
    err << "error: unknown input state '" << options.input_state << "' (zero|one|plus)\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  csv << "seed,outcomes,voted_bit\n";
  int zeros = 0;
  int voted_errors = 0;
  std::vector<double> post_fidelities;
  for (int shot = 0; shot < options.shots; ++shot) {
    const auto seed = derive_seed(config.seed, static_cast<std::uint64_t>(shot));
    const auto record = nondestructive_zbar(*input, options.rounds, options.p_ancilla, seed);
    const int bit = record.voted_bit();
    if (bit == 0) ++zeros;
    if (expected_bit >= 0 && bit != expected_bit) ++voted_errors;
    const StateVector& reference = expected_bit >= 0 ? *input : (bit == 0 ? zero : one);
    post_fidelities.push_back(fidelity(record.post_state, reference));
    csv << seed << ',';
    for (std::size_t r = 0; r < record.outcomes.size(); ++r) {
      csv << (r ? ";" : "") << record.outcomes[r];
    }
    csv << ',' << bit << '\n';
  }

  const double shots = options.shots;
  const double freq0 = zeros / shots;
  const double min_fid = *std::min_element(post_fidelities.begin(), post_fidelities.end());
  VerificationReport report("measure");
  if (expected_bit >= 0) {
    const double p_fail = majority_failure_probability(options.p_ancilla, options.rounds);
    const double rate = voted_errors / shots;
    if (options.p_ancilla == 0.0) {
      report.add({"no_voted_errors", voted_errors == 0, static_cast<double>(voted_errors),
                  "ideal ancillas must reproduce the eigenvalue every shot"});
      report.add_bound("post_state_fidelity", 1.0 - min_fid, 1e-9, "1 - min fidelity to input");
    } else {
      const double sigma = std::sqrt(p_fail * (1.0 - p_fail) / shots);
      report.add({"voted_error_rate", std::abs(rate - p_fail) <= kSigmaBound * sigma,
                  std::abs(rate - p_fail),
                  "expected " + format_double(p_fail) + " within 5 sigma = " +
                      format_double(kSigmaBound * sigma)});
    }
  } else {
    const double sigma = std::sqrt(0.25 / shots);
    report.add({"born_frequency", std::abs(freq0 - 0.5) <= kSigmaBound * sigma,
                std::abs(freq0 - 0.5), "P(0) = 1/2 within 5 sigma"});
    if (options.p_ancilla == 0.0) {
      report.add_bound("post_state_projection", 1.0 - min_fid, 1e-9,
                       "post state is the eigenstate of the voted outcome");
    }
  }

  if (!options.shots_csv_path.empty()) {
    std::ofstream file(options.shots_csv_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << options.shots_csv_path << '\n';
      return kExitUsage;
    }
    file << csv.str();
  }
  if (config.format == OutputFormat::kCsv) {
    out << csv.str();
  } else {
    json j;
    j["schema_version"] = VerificationReport::kSchemaVersion;
    j["command"] = "measure";
    j["input_state"] = options.input_state;
    j["shots"] = options.shots;
    j["rounds"] = options.rounds;
    j["p_ancilla"] = options.p_ancilla;
    j["seed"] = config.seed;
    j["bit_frequency"] = {json_number(freq0), json_number(1.0 - freq0)};
    j["voted_error_rate"] = expected_bit >= 0 ? json_number(voted_errors / shots) : json(nullptr);
    j["expected_voted_error_rate"] =
        expected_bit >= 0 ? json_number(majority_failure_probability(options.p_ancilla, options.rounds))
                          : json(nullptr);
    j["mean_post_fidelity"] = json_number(mean_of(post_fidelities));
    j["min_post_fidelity"] = json_number(min_fid);
    j["report"] = report.to_json();
    write_json(out, j);
  }
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_noise(int trials, std::string_view state, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  if (trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kExitUsage;
  }
  std::vector<StateVector> states;
  if (state == "encoded-random") {
    auto rng = derived_rng(config.seed, 0xE11C0DEDULL);
    for (int i = 0; i < 4; ++i) {
      ComplexVector a(2);
      a << Complex(standard_normal(rng), standard_normal(rng)),
          Complex(standard_normal(rng), standard_normal(rng));
      states.push_back(encode(a.normalized(), 1));
    }
  } else if (state == "product") {
    states.push_back(basis_state("0000"));
  } else {
    err << "error: unknown state '" << state << "' (encoded-random|product)\n";
    return kExitUsage;
  }
  const FidelityReport fid = collective_fidelity_sweep(states, trials, config.seed);
  VerificationReport report("noise");
  if (state == "encoded-random") {
    report.add_bound("collective_immunity", 1.0 - fid.min_fidelity, kImmunityTol,
                     "1 - min fidelity under random collective rotations");
    report.add_bound("collective_leakage", fid.max_leakage, kImmunityTol);
  } else {
    report.add({"product_state_disturbed", fid.min_fidelity < kProductFidelityCeiling,
                fid.min_fidelity, "min fidelity must fall below 0.99"});
  }
  if (config.format == OutputFormat::kCsv) {
    out << "trials,min_fidelity,mean_fidelity,max_leakage\n"
        << fid.trials << ',' << format_double(fid.min_fidelity) << ','
        << format_double(fid.mean_fidelity) << ',' << format_double(fid.max_leakage) << '\n';
  } else {
    json j;
    j["schema_version"] = VerificationReport::kSchemaVersion;
    j["command"] = "noise";
    j["state"] = std::string(state);
    j["seed"] = config.seed;
    j["fidelity"] = fid.to_json();
    j["report"] = report.to_json();
    write_json(out, j);
  }
  return report.passed() ? kExitPass : kExitFail;
}

}  // namespace dfsforge::cli
