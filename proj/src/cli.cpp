// Copyright 2026 The qnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnav/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qnav/errors.hpp"
#include "qnav/gate_navigator.hpp"
#include "qnav/oracle.hpp"
#include "qnav/subspace.hpp"

namespace qnav::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

// Tolerances used by `verify`.
constexpr double kConsistencyTol = 1e-9;
constexpr double kControlNormTol = 1e-9;
constexpr double kControlTraceTol = 1e-10;
constexpr double kFidelityTol = 1e-9;
constexpr double kPassageTol = 1e-6;
constexpr double kGateTol = 1e-9;
constexpr double kSupportTol = 1e-10;

// An (epsilon, axis) wind may be written with a few digits; accept axes this
// close to unit length and normalize them.
constexpr double kAxisNormTol = 1e-6;

[[noreturn]] void invalid(const std::string& what) { throw InvalidArgumentError(what); }

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) invalid(std::string("task: missing field '") + key + "'");
  return doc.at(key);
}

HermitianOperator parse_wind(const json& doc, Eigen::Index dim) {
  const json& w = require(doc, "wind");
  if (!w.is_object()) invalid("task: 'wind' must be an object");
  const bool has_pair = w.contains("epsilon") || w.contains("axis");
  const bool has_matrix = w.contains("matrix");
  if (has_pair == has_matrix) {
    invalid("task: 'wind' needs exactly one of {epsilon, axis} or {matrix}");
  }
  if (has_matrix) {
    const ComplexMatrix m = matrix_from_json(w.at("matrix"));
    if (m.rows() != dim) invalid("task: wind matrix dimension does not match the task");
    return HermitianOperator(m);
  }
  if (dim != 2) invalid("task: (epsilon, axis) wind is only defined for qubits");
  const json& e = require(w, "epsilon");
  const json& a = require(w, "axis");
  if (!e.is_number() || !a.is_array() || a.size() != 3) {
    invalid("task: wind needs a numeric epsilon and a 3-component axis");
  }
  Vec3 axis;
  for (int k = 0; k < 3; ++k) {
    if (!a[static_cast<std::size_t>(k)].is_number()) invalid("task: wind axis must be numeric");
    axis(k) = a[static_cast<std::size_t>(k)].get<double>();
  }
  const double eps = e.get<double>();
  if (eps >= 1.0) (void)WindSpec::make(eps, Vec3::UnitZ());  // raises WindTooStrongError
  if (eps == 0.0) return HermitianOperator::zero(2);
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > kAxisNormTol) {
    invalid("task: wind axis must have unit length");
  }
  return WindSpec::make(eps, axis.normalized()).hamiltonian();
}

json solution_matrix_block(const HermitianOperator& total, const HermitianOperator& control) {
  return {{"H_total", to_json(total.matrix())}, {"H_control", to_json(control.matrix())}};
}

json metadata(std::chrono::steady_clock::time_point start) {
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {{"tool", "qnav"}, {"version", kVersion}, {"elapsed_seconds", elapsed}};
}

// Maps library errors to exit codes; anything unrecognized is invalid input.
int report(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (dynamic_cast<const WindTooStrongError*>(&e)) return kWindTooStrong;
  if (dynamic_cast<const DegenerateTaskError*>(&e)) return kDegenerateTask;
  if (dynamic_cast<const NoOpGateError*>(&e)) return kNoOpGate;
  return kInvalidInput;
}

NavigationTask navigation_task(const TaskFile& task) {
  if (!task.psi_initial || !task.psi_final) invalid("task: state mode needs psi_initial/psi_final");
  return NavigationTask{*task.psi_initial, *task.psi_final, task.h0};
}

struct CheckTable {
  struct Row {
    std::string name;
    double value;
    double tolerance;
    bool pass;
  };
  std::vector<Row> rows;

  void at_most(const std::string& name, double value, double tol) {
    rows.push_back({name, value, tol, std::isfinite(value) && value <= tol});
  }
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
  }
  void print(std::ostream& out) const {
    out << std::left << std::setw(22) << "check" << std::setw(26) << "value" << std::setw(14)
        << "limit" << "result\n";
    for (const Row& r : rows) {
      std::ostringstream v, t;
      v << std::setprecision(12) << r.value;
      t << std::setprecision(3) << r.tolerance;
      out << std::left << std::setw(22) << r.name << std::setw(26) << v.str() << std::setw(14)
          << t.str() << (r.pass ? "PASS" : "FAIL") << '\n';
    }
  }
};

}  // namespace

// JSON conversion ----------------------------------------------------------

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
  return out;
}

json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) invalid("expected a non-empty array of complex numbers");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) invalid("expected a matrix as nested arrays");
  const std::size_t n = j.size();
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) invalid("expected a square matrix");
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

// Task files ---------------------------------------------------------------

TaskFile parse_task(const json& doc) {
  if (!doc.is_object()) invalid("task: document must be an object");
  TaskFile task;
  const std::string mode = require(doc, "mode").get<std::string>();
  if (mode == "state") {
    task.mode = Mode::kState;
  } else if (mode == "gate") {
    task.mode = Mode::kGate;
  } else if (mode == "subspace") {
    task.mode = Mode::kSubspace;
  } else {
    invalid("task: unknown mode '" + mode + "'");
  }

  Eigen::Index dim = 0;
  if (task.mode == Mode::kGate) {
    task.u_initial = matrix_from_json(require(doc, "u_initial"));
    task.u_final = matrix_from_json(require(doc, "u_final"));
    dim = task.u_initial->rows();
    if (task.u_final->rows() != dim) invalid("task: u_initial and u_final differ in size");
  } else {
    task.psi_initial = StateVector::normalized(vector_from_json(require(doc, "psi_initial")));
    task.psi_final = StateVector::normalized(vector_from_json(require(doc, "psi_final")));
    dim = task.psi_initial->dim();
    if (task.psi_final->dim() != dim) invalid("task: psi_initial and psi_final differ in size");
    if (task.mode == Mode::kState && dim != 2) {
      invalid("task: state mode is for qubits; use mode 'subspace' for larger systems");
    }
  }
  if (dim < 2) invalid("task: dimension must be at least 2");
  task.h0 = parse_wind(doc, dim);

  if (doc.contains("optimizer")) {
    const json& o = doc.at("optimizer");
    if (o.contains("grid_points")) task.optimizer.grid_points = o.at("grid_points").get<int>();
    if (o.contains("tol")) task.optimizer.tol = o.at("tol").get<double>();
  }
  if (doc.contains("oracle")) task.oracle = doc.at("oracle").get<bool>();
  if (doc.contains("max_branch")) task.max_branch = doc.at("max_branch").get<int>();
  return task;
}

TaskFile load_task(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open task file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    invalid("task file '" + path + "': " + e.what());
  }
  try {
    return parse_task(doc);
  } catch (const json::exception& e) {
    invalid("task file '" + path + "': " + e.what());
  }
}

// Commands -----------------------------------------------------------------

int cmd_solve_state(const TaskFile& task, const SolveOptions& opts, std::ostream& out,
                    std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (task.mode == Mode::kGate) {
    err << "error: solve-state needs a state or subspace task\n";
    return kInvalidInput;
  }
  OptimizerSettings settings = task.optimizer;
  if (opts.grid_points) settings.grid_points = *opts.grid_points;
  if (opts.tol) settings.tol = *opts.tol;
  const bool run_oracle = opts.oracle.value_or(task.oracle);
  const char* mode_name = task.mode == Mode::kState ? "state" : "subspace";

  NavigationSolution sol;
  try {
    const NavigationTask nav = navigation_task(task);
    sol = task.mode == Mode::kState ? optimize(nav, settings) : solve_embedded(nav, settings);
  } catch (const DegenerateTaskError& e) {
    err << "error: " << e.what() << '\n'
        << "note: the states coincide, tau = 0 and no Hamiltonian is selected\n";
    json doc = {{"mode", mode_name},
                {"status", "degenerate"},
                {"solution", {{"degenerate", true}, {"tau_star", 0.0}}},
                {"metadata", metadata(start)}};
    out << doc.dump(2) << '\n';
    return kDegenerateTask;
  } catch (const std::exception& e) {
    return report(e, err);
  }

  json solution = {{"phi_star", sol.phi_star},
                   {"omega_star", sol.omega_star},
                   {"alpha_star", sol.alpha_star},
                   {"tau_star", sol.tau_star},
                   {"theta", sol.theta},
                   {"zero_wind", sol.zero_wind},
                   {"wind",
                    {{"epsilon", sol.wind.epsilon()},
                     {"axis", {sol.wind.axis().x(), sol.wind.axis().y(), sol.wind.axis().z()}}}},
                   {"h0_trace_part", sol.h0_trace_part},
                   {"fidelity", sol.fidelity_check},
                   {"constraint_residual", sol.constraint_residual}};
  solution.update(solution_matrix_block(sol.H_total, sol.H_control));
  json doc = {{"mode", mode_name}, {"status", "ok"}, {"solution", solution}};

  if (run_oracle) {
    const double eps = sol.wind.epsilon();
    const double horizon = std::max(oracle::default_horizon(eps), 2.0 * sol.tau_star);
    const oracle::PassageResult p =
        oracle::first_passage(sol.H_total, *task.psi_initial, *task.psi_final, horizon,
                              oracle::default_time_step(eps));
    doc["oracle"] = {{"t_first", p.t_first},
                     {"peak_fidelity", p.peak_fidelity},
                     {"reached", p.reached},
                     {"tau_error", std::abs(p.t_first - sol.tau_star)}};
  }
  doc["metadata"] = metadata(start);
  out << doc.dump(2) << '\n';
  return kOk;
}

void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& out) {
  out << "phi,omega,rho,alpha,tau\n";
  char buf[160];
  for (const SweepRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.phi, r.omega, r.rho,
                  r.alpha, r.tau);
    out << buf;
  }
}

int cmd_sweep(const TaskFile& task, int points, std::ostream& out, std::ostream& err) {
  try {
    if (task.mode == Mode::kGate) invalid("sweep needs a state or subspace task");
    NavigationTask nav = navigation_task(task);
    if (task.mode == Mode::kSubspace) {
      const SubspaceReduction red = detect_and_reduce(nav);
      nav = NavigationTask{red.psi_initial, red.psi_final, red.h0_block};
    }
    write_sweep_csv(sweep(canonicalize(nav), points), out);
    return kOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_solve_gate(const TaskFile& task, const SolveOptions& opts, std::ostream& out,
                   std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (task.mode != Mode::kGate) {
    err << "error: solve-gate needs a gate task\n";
    return kInvalidInput;
  }
  const int max_branch = opts.max_branch.value_or(task.max_branch);
  const bool run_oracle = opts.oracle.value_or(task.oracle);
  const GateTask gate{*task.u_initial, *task.u_final, task.h0};

  GateSolution sol;
  std::vector<GateSolution> table;
  try {
    if (max_branch > 0) {
      table = enumerate_gate_branches(gate, max_branch);
      if (table.empty()) throw NoOpGateError("every branch in range gives X = 0");
      sol = table.front();
    } else {
      if (max_branch < 0) invalid("--max-branch must be non-negative");
      sol = solve_gate(gate);
    }
  } catch (const std::exception& e) {
    return report(e, err);
  }

  json solution = {{"T", sol.T},
                   {"branch", sol.branch},
                   {"global_phase", sol.global_phase},
                   {"X", to_json(sol.X.matrix())},
                   {"constraint_residual", sol.constraint_residual},
                   {"gate_residual", sol.gate_residual}};
  solution.update(solution_matrix_block(sol.H_total, sol.H_control));
  json doc = {{"mode", "gate"}, {"status", "ok"}, {"solution", solution}};
  if (run_oracle) {
    doc["oracle"] = {
        {"gate_residual", oracle::gate_residual(sol.H_total, gate.u_initial, gate.u_final, sol.T)}};
  }
  if (max_branch > 0) {
    json rows = json::array();
    for (const GateSolution& s : table) rows.push_back({{"branch", s.branch}, {"T", s.T}});
    doc["branches"] = rows;
  }
  doc["metadata"] = metadata(start);
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const json& result, const TaskFile& task, std::ostream& out, std::ostream& err) {
  CheckTable checks;
  try {
    const std::string mode = result.at("mode").get<std::string>();
    if (result.value("status", std::string("ok")) != "ok") invalid("result is not a solution");
    const json& s = result.at("solution");
    const HermitianOperator total(matrix_from_json(s.at("H_total")));
    const HermitianOperator control(matrix_from_json(s.at("H_control")));
    if (total.dim() != task.h0.dim() || control.dim() != task.h0.dim()) {
      invalid("result operators do not match the task dimension");
    }

    checks.at_most("control_consistency",
                   max_abs_diff(total.matrix() - task.h0.matrix(), control.matrix()),
                   kConsistencyTol);
    checks.at_most("control_trace", std::abs(control.trace()), kControlTraceTol);
    checks.at_most("control_norm", std::abs(hs_trace_product(control, control) - 1.0),
                   kControlNormTol);

    if (mode == "gate") {
      if (task.mode != Mode::kGate) invalid("result mode does not match the task");
      const double t = s.at("T").get<double>();
      checks.at_most("gate_reached",
                     oracle::gate_residual(total, *task.u_initial, *task.u_final, t), kGateTol);
    } else if (mode == "state" || mode == "subspace") {
      if (task.mode == Mode::kGate) invalid("result mode does not match the task");
      const double tau = s.at("tau_star").get<double>();
      const oracle::Propagator prop(total, *task.psi_initial, *task.psi_final);
      checks.at_most("final_infidelity", 1.0 - prop.fidelity(tau), kFidelityTol);
      const double eps = std::min(0.999, std::max(0.0, s.value("wind", json::object())
                                                            .value("epsilon", 0.0)));
      const double horizon = std::max(oracle::default_horizon(eps), 2.0 * tau);
      const oracle::PassageResult p = oracle::first_passage(
          total, *task.psi_initial, *task.psi_final, horizon, oracle::default_time_step(eps));
      checks.at_most("first_passage", p.reached ? std::abs(p.t_first - tau) : INFINITY,
                     kPassageTol);
      if (task.h0.dim() > 2) {
        const SubspaceReduction red = detect_and_reduce(navigation_task(task));
        const Eigen::Index n = task.h0.dim();
        const ComplexMatrix complement =
            ComplexMatrix::Identity(n, n) - red.basis * red.basis.adjoint();
        checks.at_most("block_support", (control.matrix() * complement).cwiseAbs().maxCoeff(),
                       kSupportTol);
      }
    } else {
      invalid("unknown result mode '" + mode + "'");
    }
  } catch (const json::exception& e) {
    err << "error: malformed result document: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    return report(e, err);
  }
  checks.print(out);
  const bool ok = checks.all_pass();
  out << (ok ? "verification passed\n" : "verification FAILED\n");
  return ok ? kOk : kVerificationFailed;
}

// Entry point ----------------------------------------------------------------

namespace {

// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) invalid("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-optimal time-independent Hamiltonians under a background field", "qnav"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string task_path, out_path, result_path;
  int points = 4096;
  std::optional<int> grid, max_branch;
  std::optional<double> tol;
  bool oracle_on = false, oracle_off = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("task", task_path, "Task file (JSON)")->required();
    sub->add_option("--out", out_path, "Write output to this file instead of stdout");
  };
  auto add_oracle_flags = [&](CLI::App* sub) {
    sub->add_flag("--oracle", oracle_on, "Cross-check with the simulation oracle");
    sub->add_flag("--no-oracle", oracle_off, "Skip the simulation oracle");
  };

  CLI::App* solve_state = app.add_subcommand("solve-state", "Optimal control for a state transfer");
  add_common(solve_state);
  solve_state->add_option("--grid", grid, "Grid points for the phi scan (>= 64)");
  solve_state->add_option("--tol", tol, "Resolution of phi* in radians");
  add_oracle_flags(solve_state);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Voyage time tau(phi) as CSV");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--points", points, "Number of phi samples (>= 16)");

  CLI::App* solve_gate_cmd = app.add_subcommand("solve-gate", "Optimal Hamiltonian for a gate");
  add_common(solve_gate_cmd);
  solve_gate_cmd->add_option("--max-branch", max_branch,
                             "Enumerate logarithm branches with offsets up to k");
  add_oracle_flags(solve_gate_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Re-check a result against its task");
  verify_cmd->add_option("result", result_path, "Result document (JSON)")->required();
  verify_cmd->add_option("task", task_path, "Task file (JSON)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  SolveOptions opts;
  opts.grid_points = grid;
  opts.tol = tol;
  opts.max_branch = max_branch;
  if (oracle_on && oracle_off) {
    err << "error: --oracle and --no-oracle are exclusive\n";
    return kInvalidInput;
  }
  if (oracle_on) opts.oracle = true;
  if (oracle_off) opts.oracle = false;

  try {
    const TaskFile task = load_task(task_path);
    if (*verify_cmd) {
      std::ifstream in(result_path);
      if (!in) invalid("cannot open result file '" + result_path + "'");
      json result;
      try {
        result = json::parse(in);
      } catch (const json::exception& e) {
        invalid("result file '" + result_path + "': " + e.what());
      }
      return cmd_verify(result, task, out, err);
    }
    Sink sink(out_path, out);
    if (*solve_state) return cmd_solve_state(task, opts, sink.stream(), err);
    if (*sweep_cmd) return cmd_sweep(task, points, sink.stream(), err);
    return cmd_solve_gate(task, opts, sink.stream(), err);
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

}  // namespace qnav::cli
