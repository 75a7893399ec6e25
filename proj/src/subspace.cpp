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

#include "qnav/subspace.hpp"

#include <string>

#include "qnav/errors.hpp"

namespace qnav {

SubspaceReduction detect_and_reduce(const NavigationTask& task) {
  const Eigen::Index n = task.h0.dim();
  if (task.psi_initial.dim() != n || task.psi_final.dim() != n) {
    throw DimensionError("subspace: state and background dimensions differ");
  }
  const ComplexVector& psi_i = task.psi_initial.amplitudes();
  const ComplexVector& psi_f = task.psi_final.amplitudes();
  const ComplexVector orth = psi_f - psi_i.dot(psi_f) * psi_i;
  if (orth.norm() < 1e-9) {
    throw DegenerateTaskError("subspace: initial and target states are linearly dependent");
  }

  ComplexMatrix basis(n, 2);
  if (n == 2) {
    basis = ComplexMatrix::Identity(2, 2);
  } else {
    basis.col(0) = psi_i;
    basis.col(1) = orth.normalized();
  }

  const ComplexMatrix& h = task.h0.matrix();
  const ComplexMatrix image = h * basis;
  const ComplexMatrix leak = image - basis * (basis.adjoint() * image);
  double residual = 0.0;
  for (Eigen::Index k = 0; k < 2; ++k) residual = std::max(residual, leak.col(k).norm());
  if (residual > kInvarianceTol) {
    throw NotInvariantError("subspace: H0 does not leave span{psi_i, psi_f} invariant (residual " +
                            std::to_string(residual) + ")");
  }

  const HermitianOperator block(basis.adjoint() * image);
  const TraceSplit split = split_trace(block);
  return SubspaceReduction{basis,
                           split.traceless,
                           split.trace_part,
                           residual,
                           StateVector::normalized(basis.adjoint() * psi_i),
                           StateVector::normalized(basis.adjoint() * psi_f)};
}

NavigationSolution solve_embedded(const NavigationTask& task, const OptimizerSettings& settings) {
  const SubspaceReduction red = detect_and_reduce(task);
  const Eigen::Index n = task.h0.dim();

  NavigationSolution sol =
      optimize(NavigationTask{red.psi_initial, red.psi_final, red.h0_block}, settings);

  const ComplexMatrix& e = red.basis;
  const ComplexMatrix complement = ComplexMatrix::Identity(n, n) - e * e.adjoint();
  const ComplexMatrix block_total =
      sol.H_total.matrix() + red.h0_trace_part * ComplexMatrix::Identity(2, 2);
  sol.H_total = HermitianOperator(e * block_total * e.adjoint() +
                                  complement * task.h0.matrix() * complement);
  sol.H_control = sol.H_total - task.h0;
  sol.constraint_residual = std::abs(hs_trace_product(sol.H_control, sol.H_control) - 1.0);
  sol.fidelity_check =
      transport_fidelity(sol.H_total, task.psi_initial, task.psi_final, sol.tau_star);
  sol.h0_trace_part = red.h0_trace_part;
  return sol;
}

}  // namespace qnav
