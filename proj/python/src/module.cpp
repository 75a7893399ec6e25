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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnav/bloch.hpp"
#include "qnav/errors.hpp"
#include "qnav/gate_navigator.hpp"
#include "qnav/linalg.hpp"
#include "qnav/oracle.hpp"
#include "qnav/state_navigator.hpp"
#include "qnav/subspace.hpp"

namespace py = pybind11;
using namespace qnav;

namespace {

StateVector state(const ComplexVector& v) { return StateVector(v); }
HermitianOperator hermitian(const ComplexMatrix& m) { return HermitianOperator(m); }

WindSpec wind(double epsilon, const Vec3& axis) {
  return epsilon == 0.0 ? WindSpec::none() : WindSpec::make(epsilon, axis);
}

py::dict solution_dict(const NavigationSolution& s) {
  py::dict d;
  d["phi_star"] = s.phi_star;
  d["omega_star"] = s.omega_star;
  d["alpha_star"] = s.alpha_star;
  d["tau_star"] = s.tau_star;
  d["theta"] = s.theta;
  d["H_total"] = s.H_total.matrix();
  d["H_control"] = s.H_control.matrix();
  d["fidelity"] = s.fidelity_check;
  d["constraint_residual"] = s.constraint_residual;
  d["zero_wind"] = s.zero_wind;
  d["epsilon"] = s.wind.epsilon();
  d["wind_axis"] = s.wind.axis();
  d["h0_trace_part"] = s.h0_trace_part;
  return d;
}

py::dict gate_dict(const GateSolution& s) {
  py::dict d;
  d["T"] = s.T;
  d["H_total"] = s.H_total.matrix();
  d["H_control"] = s.H_control.matrix();
  d["X"] = s.X.matrix();
  d["branch"] = s.branch;
  d["global_phase"] = s.global_phase;
  d["constraint_residual"] = s.constraint_residual;
  d["gate_residual"] = s.gate_residual;
  return d;
}

NavigationTask nav_task(const ComplexVector& psi_i, const ComplexVector& psi_f,
                        const ComplexMatrix& h0) {
  return {state(psi_i), state(psi_f), hermitian(h0)};
}

}  // namespace

PYBIND11_MODULE(_qnav, m) {
  m.doc() = "Time-optimal navigation of a qubit under a fixed background Hamiltonian.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError", base);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<NotUnitaryError>(m, "NotUnitaryError", base);
  py::register_exception<WindTooStrongError>(m, "WindTooStrongError", base);
  py::register_exception<DegenerateTaskError>(m, "DegenerateTaskError", base);
  py::register_exception<NoOpGateError>(m, "NoOpGateError", base);
  py::register_exception<NotInvariantError>(m, "NotInvariantError", base);

  m.def("pauli_compose",
        [](double a0, const Vec3& a) { return pauli_compose(a0, a).matrix(); },
        py::arg("a0"), py::arg("a"), "a0 I + a . sigma");
  m.def("expm_unitary",
        [](const ComplexMatrix& h, double t) { return expm_unitary(hermitian(h), t); },
        py::arg("h"), py::arg("t"), "exp(-i h t)");
  m.def("logm_unitary",
        [](const ComplexMatrix& u, const std::vector<int>& offsets) {
          return logm_unitary(u, offsets).matrix();
        },
        py::arg("u"), py::arg("offsets") = std::vector<int>{},
        "Hermitian X with exp(-i X) = u on the given eigenphase branch");

  m.def("omega_of_phi",
        [](double epsilon, const Vec3& axis, double phi) {
          return omega_of_phi(wind(epsilon, axis), phi);
        },
        py::arg("epsilon"), py::arg("axis"), py::arg("phi"));
  m.def("alpha_of_phi", &alpha_of_phi, py::arg("theta"), py::arg("phi"));
  m.def("tau_of_phi",
        [](double theta, double epsilon, const Vec3& axis, double phi) {
          return tau_of_phi(theta, wind(epsilon, axis), phi).tau;
        },
        py::arg("theta"), py::arg("epsilon"), py::arg("axis"), py::arg("phi"));

  m.def("sweep",
        [](const ComplexVector& psi_i, const ComplexVector& psi_f, const ComplexMatrix& h0,
           int n_points) {
          const std::vector<SweepRecord> rows =
              sweep(canonicalize(nav_task(psi_i, psi_f, h0)), n_points);
          const auto n = static_cast<Eigen::Index>(rows.size());
          Eigen::VectorXd phi(n), omega(n), rho(n), alpha(n), tau(n);
          for (Eigen::Index k = 0; k < n; ++k) {
            const SweepRecord& r = rows[static_cast<std::size_t>(k)];
            phi(k) = r.phi;
            omega(k) = r.omega;
            rho(k) = r.rho;
            alpha(k) = r.alpha;
            tau(k) = r.tau;
          }
          py::dict d;
          d["phi"] = phi;
          d["omega"] = omega;
          d["rho"] = rho;
          d["alpha"] = alpha;
          d["tau"] = tau;
          return d;
        },
        py::arg("psi_initial"), py::arg("psi_final"), py::arg("h0"), py::arg("n_points") = 4096);

  m.def("optimize_state",
        [](const ComplexVector& psi_i, const ComplexVector& psi_f, const ComplexMatrix& h0,
           int grid_points, double tol) {
          return solution_dict(optimize(nav_task(psi_i, psi_f, h0), {grid_points, tol}));
        },
        py::arg("psi_initial"), py::arg("psi_final"), py::arg("h0"),
        py::arg("grid_points") = 4096, py::arg("tol") = 1e-10);

  m.def("solve_embedded",
        [](const ComplexVector& psi_i, const ComplexVector& psi_f, const ComplexMatrix& h0,
           int grid_points, double tol) {
          return solution_dict(solve_embedded(nav_task(psi_i, psi_f, h0), {grid_points, tol}));
        },
        py::arg("psi_initial"), py::arg("psi_final"), py::arg("h0"),
        py::arg("grid_points") = 4096, py::arg("tol") = 1e-10);

  m.def("solve_gate",
        [](const ComplexMatrix& u_i, const ComplexMatrix& u_f, const ComplexMatrix& h0,
           const std::vector<int>& branch) {
          return gate_dict(solve_gate({u_i, u_f, hermitian(h0)}, branch));
        },
        py::arg("u_initial"), py::arg("u_final"), py::arg("h0"),
        py::arg("branch") = std::vector<int>{});

  m.def("solve_gate_min_branch",
        [](const ComplexMatrix& u_i, const ComplexMatrix& u_f, const ComplexMatrix& h0,
           int max_offset) {
          return gate_dict(solve_gate_min_branch({u_i, u_f, hermitian(h0)}, max_offset));
        },
        py::arg("u_initial"), py::arg("u_final"), py::arg("h0"), py::arg("max_offset") = 1);

  m.def("first_passage",
        [](const ComplexMatrix& h, const ComplexVector& psi_i, const ComplexVector& psi_f,
           std::optional<double> t_max, std::optional<double> dt, double eps) {
          const HermitianOperator op = hermitian(h);
          const oracle::PassageResult r = oracle::first_passage(
              op, state(psi_i), state(psi_f), t_max.value_or(oracle::default_horizon(eps)),
              dt.value_or(oracle::default_time_step(eps)));
          py::dict d;
          d["t_first"] = r.t_first;
          d["peak_fidelity"] = r.peak_fidelity;
          d["reached"] = r.reached;
          return d;
        },
        py::arg("h"), py::arg("psi_initial"), py::arg("psi_final"), py::arg("t_max") = py::none(),
        py::arg("dt") = py::none(), py::arg("epsilon") = 0.0,
        "Brute-force first passage; epsilon sets the default horizon and step");
}
