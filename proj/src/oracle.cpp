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

#include "qnav/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qnav/errors.hpp"
#include "qnav/golden.hpp"

namespace qnav::oracle {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgumentError("oracle: dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgumentError("oracle: t_max must be positive");
  }
}

std::size_t sample_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::floor(t_max / dt)) + 1;
}

}  // namespace

Propagator::Propagator(const HermitianOperator& h, const StateVector& psi_initial,
                       const StateVector& psi_final) {
  if (psi_initial.dim() != h.dim() || psi_final.dim() != h.dim()) {
    throw DimensionError("oracle: state and Hamiltonian dimensions differ");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  energies_ = es.eigenvalues();
  const ComplexMatrix& v = es.eigenvectors();
  const ComplexVector in = v.adjoint() * psi_initial.amplitudes();
  const ComplexVector out = v.adjoint() * psi_final.amplitudes();
  weights_ = out.conjugate().cwiseProduct(in);
}

Complex Propagator::overlap(double t) const {
  Complex sum{0.0, 0.0};
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    sum += weights_(k) * std::exp(-kI * (energies_(k) * t));
  }
  return sum;
}

double Propagator::fidelity_rate(double t) const {
  Complex a{0.0, 0.0};
  Complex da{0.0, 0.0};
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    const Complex term = weights_(k) * std::exp(-kI * (energies_(k) * t));
    a += term;
    da += -kI * energies_(k) * term;
  }
  return 2.0 * std::real(std::conj(a) * da);
}

FidelityCurve fidelity_curve(const HermitianOperator& h, const StateVector& psi_i,
                             const StateVector& psi_f, double t_max, double dt) {
  check_grid(t_max, dt);
  const Propagator prop(h, psi_i, psi_f);
  FidelityCurve curve;
  const std::size_t n = sample_count(t_max, dt);
  curve.t.reserve(n);
  curve.f.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * dt;
    curve.t.push_back(t);
    curve.f.push_back(std::min(1.0, prop.fidelity(t)));
  }
  return curve;
}

PassageResult first_passage(const HermitianOperator& h, const StateVector& psi_i,
                            const StateVector& psi_f, double t_max, double dt) {
  check_grid(t_max, dt);
  const Propagator prop(h, psi_i, psi_f);
  auto f = [&](double t) { return prop.fidelity(t); };
  const std::size_t n = sample_count(t_max, dt);

  PassageResult best;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * dt;
    const double fj = f(t);
    if (fj > best.peak_fidelity) best = {t, fj, false};
    if (fj < kBracketThreshold) continue;

    // Climb to the local maximum sample, then refine around it.
    std::size_t m = j;
    double fm = fj;
    while (m + 1 < n) {
      const double next = f(static_cast<double>(m + 1) * dt);
      if (next < fm) break;
      ++m;
      fm = next;
    }
    const double lo = m == 0 ? 0.0 : static_cast<double>(m - 1) * dt;
    const double hi = static_cast<double>(m + 1) * dt;
    const LineMinimum peak = golden_section_maximize(f, lo, hi, 1e-12);
    PassageResult r{peak.x, std::min(1.0, peak.value), false};
    // f is flat at the peak, so the golden-section time is only good to about
    // sqrt(machine epsilon). Polish it on the sign change of df/dt.
    double a = std::max(lo, peak.x - 1e-6);
    double b = std::min(hi, peak.x + 1e-6);
    if (prop.fidelity_rate(a) > 0.0 && prop.fidelity_rate(b) < 0.0) {
      while (true) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (prop.fidelity_rate(mid) > 0.0 ? a : b) = mid;
      }
      const double x = std::abs(prop.fidelity_rate(a)) <= std::abs(prop.fidelity_rate(b)) ? a : b;
      r = {x, std::min(1.0, std::max(f(x), peak.value)), false};
    }
    r.reached = r.peak_fidelity >= kReachThreshold;
    if (r.reached) return r;
    if (r.peak_fidelity > best.peak_fidelity) best = r;
    j = m;
  }
  best.peak_fidelity = std::min(1.0, best.peak_fidelity);
  return best;
}

double gate_residual(const HermitianOperator& h, const ComplexMatrix& u_initial,
                     const ComplexMatrix& u_final, double t) {
  if (u_initial.rows() != h.dim() || u_final.rows() != h.dim()) {
    throw DimensionError("gate_residual: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const Eigen::VectorXd& e = es.eigenvalues();
  ComplexVector phases(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) phases(k) = std::exp(-kI * (e(k) * t));
  const ComplexMatrix& v = es.eigenvectors();
  const ComplexMatrix reached = v * phases.asDiagonal() * v.adjoint() * u_initial;
  const Complex overlap = (u_final.adjoint() * reached).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (reached - phase * u_final).cwiseAbs().maxCoeff();
}

double expected_time_scale(double epsilon) {
  return std::numbers::pi / std::sqrt(2.0 * (1.0 + std::sqrt(std::max(0.0, epsilon))));
}

double default_time_step(double epsilon) { return 5e-4 * expected_time_scale(epsilon); }

double default_horizon(double epsilon) {
  // One full turn at the slowest rate an admissible control allows,
  // 2 |r| >= sqrt(2) (1 - sqrt(eps)), with a 5% margin.
  const double slowest = std::numbers::sqrt2 * (1.0 - std::sqrt(std::clamp(epsilon, 0.0, 0.999)));
  return std::max(50.0 * expected_time_scale(epsilon), 1.05 * 2.0 * std::numbers::pi / slowest);
}

}  // namespace qnav::oracle
