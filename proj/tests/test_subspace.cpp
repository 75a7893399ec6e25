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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qnav/errors.hpp"
#include "qnav/subspace.hpp"
#include "support/random.hpp"

using namespace qnav;
using namespace qnav::testing;

namespace {

struct BlockTask {
  NavigationTask task;
  ComplexMatrix span;        // n x 2, orthonormal
  ComplexMatrix complement;  // n x (n - 2), orthonormal
};

// H0 = E B E^dagger + C R C^dagger for random orthonormal E, C and the two
// states drawn from span(E).
BlockTask block_invariant_task(Eigen::Index n, double eps, double block_trace,
                               bool zero_complement = false) {
  const ComplexMatrix q = random_unitary(n);
  const ComplexMatrix e = q.leftCols(2);
  const ComplexMatrix c = q.rightCols(n - 2);
  const HermitianOperator b =
      random_wind(eps) + block_trace * HermitianOperator::identity(2);
  const ComplexMatrix r =
      zero_complement ? ComplexMatrix::Zero(n - 2, n - 2) : random_hermitian_matrix(n - 2);
  const HermitianOperator h0(e * b.matrix() * e.adjoint() + c * r * c.adjoint());
  const StateVector a(e * random_state(2).amplitudes());
  const StateVector f(e * random_state(2).amplitudes());
  return {NavigationTask{a, f, h0}, e, c};
}

}  // namespace

TEST_CASE("n = 2 reduction is the identity embedding") {
  const StateVector a = random_state(2);
  const StateVector b = random_state(2);
  const HermitianOperator h0 = random_wind(0.4) + 0.2 * HermitianOperator::identity(2);
  const SubspaceReduction red = detect_and_reduce(NavigationTask{a, b, h0});
  CHECK(red.basis.isApprox(ComplexMatrix::Identity(2, 2)));
  CHECK(max_abs_diff(red.h0_block.matrix(), split_trace(h0).traceless.matrix()) < 1e-15);
  CHECK(red.h0_trace_part == doctest::Approx(0.2));
  CHECK(red.invariance_residual < 1e-15);

  const NavigationTask task{a, b, h0};
  const NavigationSolution direct = optimize(task);
  const NavigationSolution embedded = solve_embedded(task);
  CHECK(std::abs(direct.tau_star - embedded.tau_star) < 1e-12);
  CHECK(max_abs_diff(direct.H_total.matrix(), embedded.H_total.matrix()) < 1e-12);
  CHECK(max_abs_diff(direct.H_control.matrix(), embedded.H_control.matrix()) < 1e-12);
}

TEST_CASE("block-diagonal n = 4 background") {
  const BlockTask bt = block_invariant_task(4, 0.6, 0.3);
  const SubspaceReduction red = detect_and_reduce(bt.task);
  CHECK(red.invariance_residual <= 1e-12);
  CHECK(std::abs(red.h0_block.trace()) < 1e-14);
  CHECK(red.h0_trace_part == doctest::Approx(0.3).epsilon(1e-12));

  const NavigationSolution sol = solve_embedded(bt.task);
  CHECK(sol.fidelity_check >= 1 - 1e-9);
  CHECK(sol.constraint_residual <= 1e-9);
  CHECK(std::abs(sol.H_control.trace()) < 1e-10);
  // Control support: nothing acts on the complement.
  CHECK((sol.H_control.matrix() * bt.complement).cwiseAbs().maxCoeff() <= 1e-10);

  // Total Hamiltonian agrees with H0 on the complement.
  const ComplexMatrix on_c = bt.complement.adjoint() * sol.H_total.matrix() * bt.complement;
  const ComplexMatrix h0_c = bt.complement.adjoint() * bt.task.h0.matrix() * bt.complement;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> s1(on_c), s2(h0_c);
  CHECK((s1.eigenvalues() - s2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embedded constraint equals the block value") {
  for (int i = 0; i < 10; ++i) {
    const BlockTask bt = block_invariant_task(3 + i % 3, uniform(0.1, 0.9), uniform(-1, 1));
    const NavigationSolution sol = solve_embedded(bt.task);
    const ComplexMatrix block = bt.span.adjoint() * sol.H_control.matrix() * bt.span;
    const double block_norm = (block * block).trace().real();
    CHECK(std::abs(hs_trace_product(sol.H_control, sol.H_control) - block_norm) < 1e-12);
  }
}

TEST_CASE("n = 3 with no dynamics outside the block matches the qubit problem") {
  const BlockTask bt = block_invariant_task(3, 0.7, 0.0, true);
  const SubspaceReduction red = detect_and_reduce(bt.task);
  const NavigationSolution qubit =
      optimize(NavigationTask{red.psi_initial, red.psi_final, red.h0_block});
  const NavigationSolution sol = solve_embedded(bt.task);
  CHECK(sol.tau_star == qubit.tau_star);
  CHECK(sol.fidelity_check >= 1 - 1e-9);
}

TEST_CASE("coupling out of the span is rejected") {
  BlockTask bt = block_invariant_task(3, 0.5, 0.0);
  const ComplexVector out_vec = bt.complement.col(0);
  const ComplexVector in_vec = bt.span.col(0);
  const ComplexMatrix coupling = 1e-3 * (in_vec * out_vec.adjoint() + out_vec * in_vec.adjoint());
  const NavigationTask leaky{bt.task.psi_initial, bt.task.psi_final,
                             HermitianOperator(bt.task.h0.matrix() + coupling)};
  CHECK_THROWS_AS(detect_and_reduce(leaky), NotInvariantError);
  CHECK_THROWS_AS(solve_embedded(leaky), NotInvariantError);
}

TEST_CASE("dependent states are degenerate") {
  const BlockTask bt = block_invariant_task(3, 0.5, 0.0);
  const StateVector same(std::polar(1.0, 0.4) * bt.task.psi_initial.amplitudes());
  CHECK_THROWS_AS(detect_and_reduce(NavigationTask{bt.task.psi_initial, same, bt.task.h0}),
                  DegenerateTaskError);
}
