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

#include "qnav/bloch.hpp"
#include "qnav/linalg.hpp"

namespace qnav {

/// Transport |psi_initial> to |psi_final> (up to phase) under the background
/// Hamiltonian h0 using a time-independent control with tr(H1^2) = 1.
struct NavigationTask {
  StateVector psi_initial;
  StateVector psi_final;
  HermitianOperator h0;
};

/// A qubit task expressed in its canonical frame.
struct CanonicalTask {
  StateVector psi_initial;
  StateVector psi_final;
  HermitianOperator h0;  // lab frame, as given
  CanonicalFrame frame;
  WindSpec wind;         // traceless part of h0 in canonical coordinates
  double h0_trace_part = 0.0;

  double theta() const { return frame.theta; }
};

/// One point of the voyage-time curve.
struct SweepRecord {
  double phi = 0.0;    // axis angle in the canonical xy-plane
  double omega = 0.0;  // angular frequency of H(phi)
  double rho = 0.0;    // angle between the axis and the initial Bloch vector
  double alpha = 0.0;  // first-passage rotation angle, in (0, 2 pi]
  double tau = 0.0;    // alpha / omega
};

struct OptimizerSettings {
  int grid_points = 4096;
  double tol = 1e-10;
};

struct NavigationSolution {
  double phi_star = 0.0;
  double omega_star = 0.0;
  double alpha_star = 0.0;
  double tau_star = 0.0;
  double theta = 0.0;
  HermitianOperator H_total;    // lab frame
  HermitianOperator H_control;  // H_total - h0
  /// |<psi_f| exp(-i H_total tau) |psi_i>|^2
  double fidelity_check = 0.0;
  /// |tr(H_control^2) - 1|
  double constraint_residual = 0.0;
  bool zero_wind = false;
  double h0_trace_part = 0.0;
  WindSpec wind = WindSpec::none();
};

/// Throws DimensionError unless the task is a qubit task, DegenerateTaskError
/// when the states coincide and WindTooStrongError when tr(h0_tl^2) >= 1.
CanonicalTask canonicalize(const NavigationTask& task);

/// Positive root of omega^2 - 2 sqrt(2 eps) p omega - 2 (1 - eps) = 0 with
/// p = x cos phi + y sin phi. Equals sqrt(2) for the zero wind.
double omega_of_phi(const WindSpec& wind, double phi);

/// Left-hand side of the constraint quadratic at (phi, omega).
double constraint_quadratic(const WindSpec& wind, double phi, double omega);

/// arccos(cos phi cos(theta/2)).
double rho_of_phi(double theta, double phi);

/// Rotation angle about (cos phi, sin phi, 0) that first carries the initial
/// Bloch vector onto the target. The short arc has
/// cos a = (sin^2 phi - tan^2(theta/2)) / (sin^2 phi + tan^2(theta/2));
/// right-handed rotation follows it only for sin phi > 0, otherwise the
/// first passage is 2 pi - a. Returns exactly pi when theta >= pi - 1e-9.
double alpha_of_phi(double theta, double phi);

/// Same angle obtained from vectors: the circle centre c on the axis, the
/// angle between psi_i - c and psi_f - c, and the orientation of their cross
/// product along the axis.
double alpha_of_phi_geometric(double theta, double phi);

SweepRecord tau_of_phi(double theta, const WindSpec& wind, double phi);
SweepRecord tau_of_phi(const CanonicalTask& task, double phi);

/// Records at phi_k = 2 pi k / n_points, k = 0 .. n_points - 1. Requires
/// n_points >= 16.
std::vector<SweepRecord> sweep(const CanonicalTask& task, int n_points);

/// Analytic d tau / d phi.
double dtau_dphi(double theta, const WindSpec& wind, double phi);

/// Lab-frame total Hamiltonian for axis angle phi: (omega/2)(cos phi, sin phi,
/// 0).sigma rotated back to the lab, plus the identity part of h0.
HermitianOperator total_hamiltonian(const CanonicalTask& task, double phi);

/// Minimizes tau(phi) by a dense grid scan followed by golden-section
/// refinement of every grid-local minimum; brackets never straddle the
/// orientation-flip points phi = 0 and phi = pi, which are also evaluated
/// directly. Requires grid_points >= 64 and tol > 0.
NavigationSolution optimize(const CanonicalTask& task, const OptimizerSettings& settings = {});
NavigationSolution optimize(const NavigationTask& task, const OptimizerSettings& settings = {});

/// |<psi_f| exp(-i h t) |psi_i>|^2 through expm_unitary.
double transport_fidelity(const HermitianOperator& h, const StateVector& psi_i,
                          const StateVector& psi_f, double t);

}  // namespace qnav
