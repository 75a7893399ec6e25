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

#include "qnav/bloch.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qnav/errors.hpp"

namespace qnav {

WindSpec WindSpec::make(double epsilon, const Vec3& axis) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw InvalidArgumentError("wind: epsilon must be a finite non-negative number");
  }
  if (epsilon >= 1.0) {
    throw WindTooStrongError("wind: tr(H0^2) = " + std::to_string(epsilon) +
                             " >= 1, the background Hamiltonian dominates the control");
  }
  if (epsilon == 0.0) return none();
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-12) {
    throw InvalidArgumentError("wind: axis must be a unit vector");
  }
  return WindSpec(epsilon, axis.normalized());
}

WindSpec WindSpec::none() { return WindSpec(0.0, Vec3::UnitZ()); }

double WindSpec::in_plane_projection(double phi) const {
  return axis_.x() * std::cos(phi) + axis_.y() * std::sin(phi);
}

HermitianOperator WindSpec::hamiltonian() const {
  return pauli_compose(0.0, std::sqrt(epsilon_ / 2.0) * axis_);
}

Vec3 state_to_bloch(const StateVector& psi) {
  if (psi.dim() != 2) throw DimensionError("state_to_bloch: expected a qubit state");
  const Complex a = psi.amplitudes()(0);
  const Complex b = psi.amplitudes()(1);
  const Complex coherence = std::conj(a) * b;
  return 0.5 * Vec3(2.0 * coherence.real(), 2.0 * coherence.imag(),
                    std::norm(a) - std::norm(b));
}

double vector_angle(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double angular_separation(const StateVector& psi_i, const StateVector& psi_f) {
  return vector_angle(state_to_bloch(psi_i), state_to_bloch(psi_f));
}

std::pair<StateVector, StateVector> canonical_state_pair(double theta) {
  constexpr double kPi = std::numbers::pi;
  ComplexVector vi(2), vf(2);
  vi << std::cos((kPi - theta) / 4.0), std::sin((kPi - theta) / 4.0);
  vf << std::cos((kPi + theta) / 4.0), std::sin((kPi + theta) / 4.0);
  return {StateVector::normalized(vi), StateVector::normalized(vf)};
}

CanonicalFrame build_canonical_frame(const StateVector& psi_i, const StateVector& psi_f) {
  const Vec3 bi = state_to_bloch(psi_i);
  const Vec3 bf = state_to_bloch(psi_f);
  CanonicalFrame frame;
  frame.theta = vector_angle(bi, bf);
  if (frame.theta < kDegenerateTheta) {
    throw DegenerateTaskError("initial and target states coincide (theta = " +
                              std::to_string(frame.theta) + "), voyage time is 0");
  }

  Vec3 ex, ez;
  if (frame.theta > std::numbers::pi - kDegenerateTheta) {
    // b_i + b_f vanishes: any direction orthogonal to b_i will do. Take the
    // coordinate axis least aligned with b_i and orthogonalize it.
    frame.antipodal = true;
    ez = bi.normalized();
    Eigen::Index least = 0;
    ez.cwiseAbs().minCoeff(&least);
    Vec3 seed = Vec3::Unit(least);
    ex = (seed - seed.dot(ez) * ez).normalized();
  } else {
    ex = (bi + bf).normalized();
    ez = (bi - bf).normalized();
  }
  const Vec3 ey = ez.cross(ex);
  frame.rotation.row(0) = ex.transpose();
  frame.rotation.row(1) = ey.transpose();
  frame.rotation.row(2) = ez.transpose();
  return frame;
}

WindSpec transform_wind(const CanonicalFrame& frame, const HermitianOperator& h0) {
  const PauliCoefficients c = pauli_decompose(h0);
  const double epsilon = 2.0 * c.vector.squaredNorm();
  if (epsilon == 0.0) return WindSpec::none();
  if (epsilon >= 1.0) {
    throw WindTooStrongError("wind: tr(H0^2) = " + std::to_string(epsilon) +
                             " >= 1, the background Hamiltonian dominates the control");
  }
  return WindSpec::make(epsilon, frame.to_canonical(c.vector.normalized()).normalized());
}

}  // namespace qnav
