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

#include <vector>

#include "qnav/linalg.hpp"

namespace qnav {

/// Realize u_final from u_initial: exp(-i H T) u_initial = u_final up to a
/// global phase, with H = H0 + H1 and tr(H1^2) = 1.
struct GateTask {
  ComplexMatrix u_initial;
  ComplexMatrix u_final;
  HermitianOperator h0;

  Eigen::Index dim() const { return u_initial.rows(); }
};

struct GateSolution {
  double T = 0.0;
  HermitianOperator H_total;
  HermitianOperator H_control;
  /// Traceless generator with exp(-i X) = e^{i gamma_X} u_final u_initial^dagger.
  HermitianOperator X;
  std::vector<int> branch;
  /// gamma with exp(-i H_total T) u_initial = e^{i gamma} u_final, in (-pi, pi].
  double global_phase = 0.0;
  /// |tr(H_control^2) - 1|
  double constraint_residual = 0.0;
  /// ||exp(-i H_total T) u_initial - e^{i gamma} u_final||_max
  double gate_residual = 0.0;
};

/// Throws NotUnitaryError, DimensionError or WindTooStrongError when the task
/// is not admissible.
void validate(const GateTask& task);

/// Closed-form optimal time-independent Hamiltonian for one logarithm branch.
///
/// V = u_final u_initial^dagger is first scaled by e^{-i arg(det V)/n} so that
/// det V = 1, then X = i ln V on the given branch (see logm_unitary) with any
/// residual trace removed. With b = tr(H0 X), e = tr(H0^2), q = tr(X^2):
///   1/T = (sqrt(b^2 + (1 - e) q) + b) / q,   H = X / T.
/// The identity part of h0 is carried into H_total so that H_control stays
/// traceless. An empty branch means the principal branch. Throws
/// NoOpGateError when q vanishes.
GateSolution solve_gate(const GateTask& task, const std::vector<int>& branch = {});

/// Every branch vector with entries in [-max_offset, max_offset] summing to
/// zero, sorted by T (ties broken by the lexicographically smaller branch).
/// Branches for which X vanishes are skipped.
std::vector<GateSolution> enumerate_gate_branches(const GateTask& task, int max_offset);

/// The first entry of enumerate_gate_branches. Throws NoOpGateError when no
/// branch in range yields a nonzero X.
GateSolution solve_gate_min_branch(const GateTask& task, int max_offset);

/// Voyage time from the closed form in terms of the three traces. Returns
/// +infinity when q = 0.
double gate_voyage_time(double tr_h0_x, double tr_h0_sq, double tr_x_sq);

}  // namespace qnav
