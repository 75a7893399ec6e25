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

#include "qnav/linalg.hpp"
#include "qnav/state_navigator.hpp"

namespace qnav {

/// Invariance tolerance on ||H0 e_k - P H0 e_k||.
inline constexpr double kInvarianceTol = 1e-9;

/// The two-dimensional block of an n-level task spanned by the two states.
struct SubspaceReduction {
  /// n x 2 matrix with orthonormal columns e1 = psi_i and e2 the normalized
  /// component of psi_f orthogonal to psi_i. For n = 2 it is the identity.
  ComplexMatrix basis;
  /// Traceless 2x2 block <e_j|H0|e_k> - h0_trace_part I.
  HermitianOperator h0_block;
  double h0_trace_part = 0.0;
  double invariance_residual = 0.0;
  /// The two states in block coordinates.
  StateVector psi_initial;
  StateVector psi_final;
};

/// Throws NotInvariantError when H0 couples the span to its complement and
/// DegenerateTaskError when the states are linearly dependent.
SubspaceReduction detect_and_reduce(const NavigationTask& task);

/// Solves the block problem and embeds it: the control acts only on the span
/// and the complement evolves under H0 alone. The returned operators are
/// n x n; phi/omega/tau refer to the block problem.
NavigationSolution solve_embedded(const NavigationTask& task,
                                  const OptimizerSettings& settings = {});

}  // namespace qnav
