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

#include <utility>

#include <Eigen/Dense>

#include "qnav/linalg.hpp"

namespace qnav {

/// Below this angular separation the two states are treated as identical.
inline constexpr double kDegenerateTheta = 1e-9;

/// Background ("wind") Hamiltonian of a qubit, H0 = sqrt(eps/2) (n . sigma)
/// with |n| = 1 and 0 < eps < 1, so that tr(H0^2) = eps. The zero wind is a
/// separate state with eps = 0.
class WindSpec {
 public:
  /// Throws WindTooStrongError for eps >= 1 and InvalidArgumentError for a
  /// negative eps or an axis that is not unit length within 1e-12. eps = 0
  /// yields the zero wind.
  static WindSpec make(double epsilon, const Vec3& axis);
  static WindSpec none();

  double epsilon() const { return epsilon_; }
  const Vec3& axis() const { return axis_; }
  bool is_zero() const { return epsilon_ == 0.0; }

  /// Component of the axis along (cos phi, sin phi, 0).
  double in_plane_projection(double phi) const;

  /// The traceless 2x2 operator this wind describes.
  HermitianOperator hamiltonian() const;

 private:
  WindSpec(double epsilon, const Vec3& axis) : epsilon_(epsilon), axis_(axis) {}

  double epsilon_;
  Vec3 axis_;
};

/// Proper rotation taking lab Bloch coordinates to the frame where the
/// initial and target states sit at (1/2)(cos theta/2, 0, +-sin theta/2).
struct CanonicalFrame {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  double theta = 0.0;
  /// Set when theta is within 1e-9 of pi and the in-plane direction was
  /// chosen by the deterministic tie-break.
  bool antipodal = false;

  Vec3 to_canonical(const Vec3& lab) const { return rotation * lab; }
  Vec3 to_lab(const Vec3& canonical) const { return rotation.transpose() * canonical; }
};

/// Bloch vector with the radius-1/2 convention: (1/2)(<sx>, <sy>, <sz>).
Vec3 state_to_bloch(const StateVector& psi);

/// Angle between two vectors in R^3, accurate for nearly (anti)parallel input.
double vector_angle(const Vec3& a, const Vec3& b);

/// theta = 2 arccos |<psi_i|psi_f>|, evaluated through the Bloch vectors.
double angular_separation(const StateVector& psi_i, const StateVector& psi_f);

/// The pair (cos((pi - theta)/4), sin((pi - theta)/4)) and
/// (cos((pi + theta)/4), sin((pi + theta)/4)).
std::pair<StateVector, StateVector> canonical_state_pair(double theta);

/// Throws DegenerateTaskError when theta < kDegenerateTheta.
CanonicalFrame build_canonical_frame(const StateVector& psi_i, const StateVector& psi_f);

/// Expresses the traceless part of a 2x2 background Hamiltonian as a wind in
/// the canonical frame. The identity component of h0 is ignored (it only
/// contributes a global phase); callers that need it use split_trace.
/// Throws WindTooStrongError when tr(h0_traceless^2) >= 1.
WindSpec transform_wind(const CanonicalFrame& frame, const HermitianOperator& h0);

}  // namespace qnav
