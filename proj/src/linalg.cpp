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

#include "qnav/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qnav/errors.hpp"

namespace qnav {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  if (m.rows() < 2) {
    throw DimensionError(std::string(what) + ": dimension must be at least 2");
  }
  if (!m.allFinite()) {
    throw InvalidArgumentError(std::string(what) + ": non-finite entry");
  }
}

ComplexMatrix make_pauli(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Wraps an angle into (-pi, pi].
double wrap_principal(double x) {
  constexpr double kPi = std::numbers::pi;
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

}  // namespace

// HermitianOperator ---------------------------------------------------------

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  require_square_finite(m, "HermitianOperator");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double drift = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (drift > kHermitianTol * scale) {
    throw InvalidArgumentError("HermitianOperator: matrix is not Hermitian (drift " +
                               std::to_string(drift) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator+: dimension mismatch");
  return HermitianOperator(a.m_ + b.m_, HermitianOperator::Trusted{});
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("operator-: dimension mismatch");
  return HermitianOperator(a.m_ - b.m_, HermitianOperator::Trusted{});
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.m_, HermitianOperator::Trusted{});
}

// StateVector ---------------------------------------------------------------

StateVector::StateVector(const ComplexVector& amplitudes) {
  if (amplitudes.size() < 1) throw DimensionError("StateVector: empty");
  if (!amplitudes.allFinite()) throw InvalidArgumentError("StateVector: non-finite amplitude");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol) {
    throw InvalidArgumentError("StateVector: not normalized");
  }
  v_ = amplitudes;
}

StateVector StateVector::normalized(const ComplexVector& amplitudes) {
  if (amplitudes.size() < 1) throw DimensionError("StateVector: empty");
  if (!amplitudes.allFinite()) throw InvalidArgumentError("StateVector: non-finite amplitude");
  const double n = amplitudes.norm();
  if (n == 0.0) throw InvalidArgumentError("StateVector: zero vector");
  return StateVector(amplitudes / n, Trusted{});
}

// Pauli algebra -------------------------------------------------------------

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = make_pauli(0.0, 1.0, 1.0, 0.0);
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = make_pauli(0.0, -kI, kI, 0.0);
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = make_pauli(1.0, 0.0, 0.0, -1.0);
  return m;
}

HermitianOperator pauli_compose(double a0, const Vec3& a) {
  ComplexMatrix m(2, 2);
  m << Complex(a0 + a.z(), 0.0), Complex(a.x(), -a.y()),
       Complex(a.x(), a.y()), Complex(a0 - a.z(), 0.0);
  return HermitianOperator(m);
}

HermitianOperator pauli_compose(const PauliCoefficients& c) {
  return pauli_compose(c.identity, c.vector);
}

PauliCoefficients pauli_decompose(const HermitianOperator& h) {
  if (h.dim() != 2) throw DimensionError("pauli_decompose: expected a 2x2 operator");
  const ComplexMatrix& m = h.matrix();
  PauliCoefficients c;
  c.identity = 0.5 * (m(0, 0).real() + m(1, 1).real());
  c.vector = Vec3(0.5 * (m(0, 1).real() + m(1, 0).real()),
                  0.5 * (m(1, 0).imag() - m(0, 1).imag()),
                  0.5 * (m(0, 0).real() - m(1, 1).real()));
  return c;
}

double hs_trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("hs_trace_product: dimension mismatch");
  // tr(ab) = sum_ij a_ij b_ji
  return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

TraceSplit split_trace(const HermitianOperator& h) {
  const double t = h.trace() / static_cast<double>(h.dim());
  return {t, h - t * HermitianOperator::identity(h.dim())};
}

// Exponential and logarithm ------------------------------------------------

ComplexMatrix expm_unitary_eigen(const HermitianOperator& h, double t) {
  if (!std::isfinite(t)) throw InvalidArgumentError("expm_unitary: non-finite time");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const ComplexMatrix& v = es.eigenvectors();
  ComplexVector phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::exp(-kI * (lambda(k) * t));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix expm_unitary_pauli(const HermitianOperator& h, double t) {
  if (!std::isfinite(t)) throw InvalidArgumentError("expm_unitary: non-finite time");
  const PauliCoefficients c = pauli_decompose(h);
  const double r = c.vector.norm();
  ComplexMatrix u = std::cos(r * t) * ComplexMatrix::Identity(2, 2);
  if (r > 0.0) {
    const Vec3 n = c.vector / r;
    const ComplexMatrix axis = n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
    u -= kI * std::sin(r * t) * axis;
  }
  return std::exp(-kI * (c.identity * t)) * u;
}

ComplexMatrix expm_unitary(const HermitianOperator& h, double t) {
  if (h.dim() == 2) return expm_unitary_pauli(h, t);
  return expm_unitary_eigen(h, t);
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity_defect: matrix is not square");
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() && u.allFinite() && unitarity_defect(u) <= tol;
}

namespace {

struct UnitaryEigen {
  std::vector<double> phases;  // principal, descending
  ComplexMatrix vectors;       // columns ordered like phases
};

UnitaryEigen unitary_eigen(const ComplexMatrix& u) {
  require_square_finite(u, "logm_unitary");
  if (!is_unitary(u)) {
    throw NotUnitaryError("logm_unitary: input is not unitary (defect " +
                          std::to_string(unitarity_defect(u)) + ")");
  }
  // A unitary is normal, so its complex Schur form is diagonal up to roundoff
  // and the Schur vectors form an orthonormal eigenbasis even under degeneracy.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& tri = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  const Eigen::Index n = u.rows();

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    raw[static_cast<std::size_t>(k)] = wrap_principal(-std::arg(tri(k, k)));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return raw[static_cast<std::size_t>(a)] > raw[static_cast<std::size_t>(b)];
  });

  UnitaryEigen out;
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.phases.push_back(raw[static_cast<std::size_t>(src)]);
    out.vectors.col(k) = q.col(src);
  }
  return out;
}

}  // namespace

std::vector<double> principal_eigenphases(const ComplexMatrix& u) {
  return unitary_eigen(u).phases;
}

HermitianOperator logm_unitary(const ComplexMatrix& u, std::span<const int> branch_offsets) {
  const UnitaryEigen eig = unitary_eigen(u);
  const auto n = static_cast<std::size_t>(u.rows());
  if (!branch_offsets.empty() && branch_offsets.size() != n) {
    throw DimensionError("logm_unitary: branch offsets length " +
                         std::to_string(branch_offsets.size()) + " != dimension " +
                         std::to_string(n));
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const int shift = branch_offsets.empty() ? 0 : branch_offsets[k];
    x(static_cast<Eigen::Index>(k)) = eig.phases[k] + 2.0 * std::numbers::pi * shift;
  }
  const ComplexMatrix& v = eig.vectors;
  return HermitianOperator(v * x.cast<Complex>().asDiagonal() * v.adjoint());
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qnav
