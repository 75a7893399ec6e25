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

#include "qnav/errors.hpp"
#include "qnav/gate_navigator.hpp"
#include "qnav/oracle.hpp"
#include "qnav/state_navigator.hpp"
#include "support/random.hpp"

using namespace qnav;
using namespace qnav::testing;

namespace {

constexpr double kPi = std::numbers::pi;

HermitianOperator sz() { return HermitianOperator(pauli_z()); }

void check_solution(const GateTask& task, const GateSolution& sol) {
  CHECK(sol.constraint_residual <= 1e-9);
  CHECK(std::abs(sol.H_control.trace()) < 1e-10);
  CHECK(std::abs(sol.X.trace()) < 1e-12);
  CHECK(sol.gate_residual <= 1e-9);
  CHECK(oracle::gate_residual(sol.H_total, task.u_initial, task.u_final, sol.T) <= 1e-9);
}

}  // namespace

TEST_CASE("no wind: T = sqrt(tr X^2)") {
  for (int i = 0; i < 20; ++i) {
    const GateTask task{random_su2(), random_su2(), HermitianOperator::zero(2)};
    const GateSolution sol = solve_gate(task);
    const double q = hs_trace_product(sol.X, sol.X);
    CHECK(sol.T == doctest::Approx(std::sqrt(q)).epsilon(1e-12));
    CHECK(max_abs_diff(sol.H_total.matrix(), (1.0 / std::sqrt(q)) * sol.X.matrix()) < 1e-12);
    check_solution(task, sol);
  }
}

TEST_CASE("sigma_z tailwind closed form") {
  // With H0 = sqrt(eps/2) sz and X = beta sz: tr(H0 X) = beta sqrt(2 eps),
  // tr(X^2) = 2 beta^2, tr(H0^2) = eps, so
  // 1/T = (beta sqrt(2 eps) + sqrt(2 beta^2 eps + 2 beta^2 (1 - eps))) / (2 beta^2)
  //     = (1 + sqrt(eps)) / (sqrt(2) beta).
  for (double eps : {0.1, 0.5, 0.9}) {
    for (double beta : {0.3, 1.0, 2.5}) {
      const GateTask task{ComplexMatrix::Identity(2, 2), expm_unitary(sz(), beta),
                          std::sqrt(eps / 2) * sz()};
      const GateSolution sol = solve_gate(task);
      CHECK(max_abs_diff(sol.X.matrix(), (beta * sz()).matrix()) < 1e-12);
      const double b = beta * std::sqrt(2 * eps);
      const double q = 2 * beta * beta;
      const double direct = q / (std::sqrt(b * b + (1 - eps) * q) + b);
      const double symbolic = std::sqrt(2.0) * beta / (1 + std::sqrt(eps));
      CHECK(direct == doctest::Approx(symbolic).epsilon(1e-14));
      CHECK(std::abs(sol.T - symbolic) < 1e-10);
      check_solution(task, sol);
    }
  }
}

TEST_CASE("random SU(2) gates with eps = 0.5") {
  for (int i = 0; i < 50; ++i) {
    const GateTask task{random_su2(), random_su2(), random_wind(0.5)};
    check_solution(task, solve_gate(task));
  }
}

TEST_CASE("random U(n) gates with traced backgrounds") {
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 20; ++i) {
      HermitianOperator h0 = split_trace(random_hermitian(n)).traceless;
      h0 = (uniform(0.05, 0.95) / std::sqrt(hs_trace_product(h0, h0))) * h0;
      h0 = h0 + uniform(-1.0, 1.0) * HermitianOperator::identity(n);
      const GateTask task{random_unitary(n), random_unitary(n), h0};
      check_solution(task, solve_gate(task));
    }
  }
}

TEST_CASE("no-op gates are rejected") {
  const ComplexMatrix u = random_unitary(2);
  CHECK_THROWS_AS(solve_gate(GateTask{u, u, random_wind(0.3)}), NoOpGateError);
  const ComplexMatrix phased = std::polar(1.0, 0.8) * u;
  CHECK_THROWS_AS(solve_gate(GateTask{u, phased, random_wind(0.3)}), NoOpGateError);
}

TEST_CASE("invalid gate tasks") {
  const ComplexMatrix u = random_unitary(2);
  CHECK_THROWS_AS(solve_gate(GateTask{u, 1.1 * u, random_wind(0.3)}), NotUnitaryError);
  CHECK_THROWS_AS(solve_gate(GateTask{u, random_unitary(3), random_wind(0.3)}), DimensionError);
  CHECK_THROWS_AS(solve_gate(GateTask{u, random_unitary(2), pauli_compose(0, Vec3(0, 0, 0.8))}),
                  WindTooStrongError);
  CHECK_THROWS_AS(solve_gate(GateTask{u, random_unitary(2), random_wind(0.3)}, {1, 0, 0}),
                  DimensionError);
}

TEST_CASE("branch enumeration") {
  const GateTask task{random_su2(), random_su2(), random_wind(0.4)};
  const GateSolution principal = solve_gate(task);
  const GateSolution zero = solve_gate_min_branch(task, 0);
  CHECK(zero.branch == std::vector<int>{0, 0});
  CHECK(zero.T == principal.T);

  // Rotation by nearly pi against a headwind: going the long way round with
  // the wind can be faster.
  const double eps = 0.8;
  const GateTask head{ComplexMatrix::Identity(2, 2), expm_unitary(sz(), kPi - 0.1),
                      -std::sqrt(eps / 2) * sz()};
  const GateSolution p = solve_gate(head);
  const std::vector<GateSolution> table = enumerate_gate_branches(head, 2);
  // Balanced vectors in [-2, 2]^2: (-2,2), (-1,1), (0,0), (1,-1), (2,-2).
  CHECK(table.size() == 5);
  for (std::size_t k = 1; k < table.size(); ++k) CHECK(table[k - 1].T <= table[k].T);
  double brute = INFINITY;
  for (const GateSolution& s : table) {
    brute = std::min(brute, s.T);
    check_solution(head, s);
  }
  const GateSolution best = solve_gate_min_branch(head, 2);
  CHECK(best.T == brute);
  CHECK(best.T <= p.T);
  CHECK(best.branch != std::vector<int>{0, 0});

  // Identity gate: the principal branch is a no-op, a full revolution is not.
  const GateTask id{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), random_wind(0.3)};
  CHECK_THROWS_AS(solve_gate(id), NoOpGateError);
  const GateSolution rev = solve_gate_min_branch(id, 1);
  CHECK(std::isfinite(rev.T));
  CHECK(rev.T > 0.0);
  check_solution(id, rev);
  CHECK_THROWS_AS(solve_gate_min_branch(id, 0), NoOpGateError);
}

TEST_CASE("tailwind monotonicity of the voyage time") {
  const double e = 0.6;
  const double q = 3.0;
  const double bmax = std::sqrt(e * q);  // Cauchy-Schwarz bound on tr(H0 X)
  double prev = INFINITY;
  for (int k = 0; k <= 200; ++k) {
    const double b = -bmax + 2 * bmax * k / 200.0;
    const double t = gate_voyage_time(b, e, q);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(std::isinf(gate_voyage_time(0.0, 0.5, 0.0)));
}

TEST_CASE("state transport is never slower than gate transport") {
  int compared = 0;
  for (int i = 0; i < 30; ++i) {
    const double eps = uniform(0.05, 0.9);
    const GateTask task{random_su2(), random_su2(), random_wind(eps)};
    const GateSolution gate = solve_gate(task);
    const StateVector chi = random_state(2);
    const StateVector psi_i(task.u_initial * chi.amplitudes());
    const StateVector psi_f(task.u_final * chi.amplitudes());
    if (angular_separation(psi_i, psi_f) < 1e-6) continue;
    const NavigationSolution state = optimize(NavigationTask{psi_i, psi_f, task.h0});
    CHECK(state.tau_star <= gate.T + 1e-8);
    ++compared;
  }
  CHECK(compared > 20);
}
