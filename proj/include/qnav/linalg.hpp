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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qnav {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

/// Tolerance on ||M - M^dagger||_max accepted when building a Hermitian
/// operator; scaled by max(1, ||M||_max).
inline constexpr double kHermitianTol = 1e-12;
/// Tolerance on ||U^dagger U - I||_max for unitary inputs.
inline constexpr double kUnitaryTol = 1e-10;
/// Tolerance on | ||psi|| - 1 | for state vectors.
inline constexpr double kNormTol = 1e-12;

/// Dense Hermitian operator. Stored exactly Hermitian: the input is averaged
/// with its adjoint after the drift check.
class HermitianOperator {
 public:
  /// 2x2 zero operator.
  HermitianOperator() : m_(ComplexMatrix::Zero(2, 2)) {}
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// Real trace (the imaginary part of a Hermitian trace vanishes).
  double trace() const;

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);
  friend HermitianOperator operator*(const HermitianOperator& a, double s) { return s * a; }

 private:
  struct Trusted {};
  HermitianOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Normalized pure state.
class StateVector {
 public:
  /// Qubit basis state |0>.
  StateVector() : v_(ComplexVector::Unit(2, 0)) {}
  /// Requires unit norm within kNormTol.
  explicit StateVector(const ComplexVector& amplitudes);

  /// Normalizes the input; rejects the zero vector.
  static StateVector normalized(const ComplexVector& amplitudes);

  const ComplexVector& amplitudes() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

 private:
  struct Trusted {};
  StateVector(ComplexVector v, Trusted) : v_(std::move(v)) {}

  ComplexVector v_;
};

struct PauliCoefficients {
  double identity = 0.0;
  Vec3 vector = Vec3::Zero();
};

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

/// a0 I + a.sigma as a 2x2 Hermitian operator.
HermitianOperator pauli_compose(double a0, const Vec3& a);
HermitianOperator pauli_compose(const PauliCoefficients& c);

/// Inverse of pauli_compose. Throws DimensionError unless dim == 2.
PauliCoefficients pauli_decompose(const HermitianOperator& h);

/// Re tr(a b).
double hs_trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Splits h = (tr h / n) I + traceless part.
struct TraceSplit {
  double trace_part = 0.0;
  HermitianOperator traceless;
};
TraceSplit split_trace(const HermitianOperator& h);

/// exp(-i h t). Uses the closed Pauli form for 2x2 operators and a Hermitian
/// eigendecomposition otherwise.
ComplexMatrix expm_unitary(const HermitianOperator& h, double t);

/// exp(-i h t) through the Hermitian eigendecomposition, for any dimension.
ComplexMatrix expm_unitary_eigen(const HermitianOperator& h, double t);

/// exp(-i h t) = e^{-i a0 t} (cos(|r| t) I - i sin(|r| t) r_hat.sigma) for
/// h = a0 I + r.sigma. Throws DimensionError unless dim == 2.
ComplexMatrix expm_unitary_pauli(const HermitianOperator& h, double t);

/// ||U^dagger U - I||_max.
double unitarity_defect(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

/// Hermitian X with u = exp(-i X).
///
/// Eigenphases x_k (u v_k = e^{-i x_k} v_k) are taken in the principal window
/// (-pi, pi], then shifted by 2 pi * branch_offsets[k]. Eigenpairs are ordered
/// by descending principal eigenphase, ties kept in Schur order. An empty
/// offsets span means all zeros; otherwise its length must equal the
/// dimension. Throws NotUnitaryError for non-unitary input.
HermitianOperator logm_unitary(const ComplexMatrix& u, std::span<const int> branch_offsets = {});

/// Principal eigenphases of a unitary in the ordering used by logm_unitary.
std::vector<double> principal_eigenphases(const ComplexMatrix& u);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qnav
