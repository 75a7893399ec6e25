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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnav/linalg.hpp"
#include "qnav/state_navigator.hpp"

namespace qnav::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kWindTooStrong = 3,
  kDegenerateTask = 4,
  kNoOpGate = 5,
};

enum class Mode { kState, kGate, kSubspace };

/// Parsed task document. States and unitaries are stored as given; the wind
/// is always materialized as a lab-frame operator.
struct TaskFile {
  Mode mode = Mode::kState;
  std::optional<StateVector> psi_initial;
  std::optional<StateVector> psi_final;
  std::optional<ComplexMatrix> u_initial;
  std::optional<ComplexMatrix> u_final;
  HermitianOperator h0;
  OptimizerSettings optimizer;
  bool oracle = true;
  int max_branch = 0;
};

// [re, im] pairs and row-major nested arrays.
nlohmann::json to_json(Complex z);
nlohmann::json to_json(const ComplexVector& v);
nlohmann::json to_json(const ComplexMatrix& m);
Complex complex_from_json(const nlohmann::json& j);
ComplexVector vector_from_json(const nlohmann::json& j);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Throws InvalidArgumentError (or a more specific library error such as
/// WindTooStrongError) for malformed documents.
TaskFile parse_task(const nlohmann::json& doc);
TaskFile load_task(const std::string& path);

struct SolveOptions {
  std::optional<int> grid_points;
  std::optional<double> tol;
  std::optional<bool> oracle;
  std::optional<int> max_branch;
};

/// Each command writes its document to `out` and diagnostics to `err` and
/// returns a process exit code.
int cmd_solve_state(const TaskFile& task, const SolveOptions& opts, std::ostream& out,
                    std::ostream& err);
int cmd_sweep(const TaskFile& task, int points, std::ostream& out, std::ostream& err);
int cmd_solve_gate(const TaskFile& task, const SolveOptions& opts, std::ostream& out,
                   std::ostream& err);
int cmd_verify(const nlohmann::json& result, const TaskFile& task, std::ostream& out,
               std::ostream& err);

/// Sweep rows as CSV: header phi,omega,rho,alpha,tau and 17 significant
/// digits per value, LF line endings.
void write_sweep_csv(const std::vector<SweepRecord>& rows, std::ostream& out);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnav::cli
