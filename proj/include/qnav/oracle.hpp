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

// Brute-force time evolution used to cross-check the navigators. Nothing here
// depends on the navigation formulas.
namespace qnav::oracle {

/// Samples above this fidelity open a refinement bracket.
inline constexpr double kBracketThreshold = 1.0 - 1e-6;
/// A refined peak at or above this fidelity counts as reaching the target.
inline constexpr double kReachThreshold = 1.0 - 1e-9;

struct PassageResult {
  double t_first = 0.0;
  double peak_fidelity = 0.0;
  bool reached = false;
};

struct FidelityCurve {
  std::vector<double> t;
  std::vector<double> f;
};

/// Evolution of one initial state under a fixed Hamiltonian, diagonalized
/// once so that every time sample is an exact exponential.
class Propagator {
 public:
  Propagator(const HermitianOperator& h, const StateVector& psi_initial,
             const StateVector& psi_final);

  /// <psi_f| exp(-i h t) |psi_i>
  Complex overlap(double t) const;
  double fidelity(double t) const { return std::norm(overlap(t)); }
  /// df/dt
  double fidelity_rate(double t) const;

 private:
  Eigen::VectorXd energies_;
  ComplexVector weights_;  // <psi_f|v_k><v_k|psi_i>
};

/// f(t) = |<psi_f|exp(-i h t)|psi_i>|^2 on t = 0, dt, ..., t_max. When
/// dt > t_max the series holds the single sample at t = 0.
FidelityCurve fidelity_curve(const HermitianOperator& h, const StateVector& psi_i,
                             const StateVector& psi_f, double t_max, double dt);

/// First time the evolution reaches psi_f. Scans the grid for the first
/// sample above kBracketThreshold, climbs to the local maximum sample and
/// refines the peak by golden-section search to 1e-12 in time, polished on
/// the sign change of df/dt. Peaks below kReachThreshold are skipped.
PassageResult first_passage(const HermitianOperator& h, const StateVector& psi_i,
                            const StateVector& psi_f, double t_max, double dt);

/// ||exp(-i h t) u_i - e^{i g} u_f||_max with g chosen to best align the two
/// (g = arg tr(u_f^dagger exp(-i h t) u_i)).
double gate_residual(const HermitianOperator& h, const ComplexMatrix& u_initial,
                     const ComplexMatrix& u_final, double t);

/// Heuristic time scale pi / sqrt(2 (1 + sqrt(eps))) for a qubit wind of
/// strength eps.
double expected_time_scale(double epsilon);
/// Default grid step, 5e-4 of the time scale.
double default_time_step(double epsilon);
/// Default horizon: 50 time scales or 1.05 turns at the slowest admissible
/// rotation rate, whichever is longer.
double default_horizon(double epsilon);

}  // namespace qnav::oracle
