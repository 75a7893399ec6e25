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

#include "qnav/state_navigator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "qnav/errors.hpp"
#include "qnav/golden.hpp"

namespace qnav {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

bool is_antipodal(double theta) { return theta >= kPi - kDegenerateTheta; }

}  // namespace

CanonicalTask canonicalize(const NavigationTask& task) {
  if (task.psi_initial.dim() != 2 || task.psi_final.dim() != 2 || task.h0.dim() != 2) {
    throw DimensionError("state navigation: expected qubit states and a 2x2 background");
  }
  CanonicalFrame frame = build_canonical_frame(task.psi_initial, task.psi_final);
  const TraceSplit split = split_trace(task.h0);
  WindSpec wind = transform_wind(frame, split.traceless);
  return CanonicalTask{task.psi_initial, task.psi_final, task.h0,
                       frame,            wind,           split.trace_part};
}

double omega_of_phi(const WindSpec& wind, double phi) {
  if (wind.is_zero()) return std::numbers::sqrt2;
  const double eps = wind.epsilon();
  const double p = wind.in_plane_projection(phi);
  const double b = std::sqrt(2.0 * eps) * p;
  const double disc = std::sqrt(b * b + 2.0 * (1.0 - eps));
  // For a headwind (b < 0) the textbook root disc + b cancels; the product of
  // the roots is -2(1 - eps), which gives the same root without cancellation.
  if (b >= 0.0) return disc + b;
  return 2.0 * (1.0 - eps) / (disc - b);
}

double constraint_quadratic(const WindSpec& wind, double phi, double omega) {
  const double eps = wind.epsilon();
  const double p = wind.in_plane_projection(phi);
  return omega * omega - 2.0 * std::sqrt(2.0 * eps) * p * omega - 2.0 * (1.0 - eps);
}

double rho_of_phi(double theta, double phi) {
  const double c = std::cos(phi) * std::cos(theta / 2.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double alpha_of_phi(double theta, double phi) {
  if (is_antipodal(theta)) return kPi;
  const double s = std::sin(phi);
  if (s == 0.0) return kPi;
  // cos a and sin a of the short arc, both scaled by cos^2(theta/2) so that
  // nothing overflows as theta approaches pi:
  //   cos a ~ sin^2 phi cos^2(theta/2) - sin^2(theta/2)
  //   sin a ~ |sin phi| sin(theta)
  const double ch = std::cos(theta / 2.0);
  const double sh = std::sin(theta / 2.0);
  const double a = std::atan2(std::abs(s) * std::sin(theta), s * s * ch * ch - sh * sh);
  const double alpha = s > 0.0 ? a : kTwoPi - a;
  assert(std::abs(alpha - alpha_of_phi_geometric(theta, phi)) < 1e-8);
  return alpha;
}

double alpha_of_phi_geometric(double theta, double phi) {
  if (is_antipodal(theta)) return kPi;
  const Vec3 axis(std::cos(phi), std::sin(phi), 0.0);
  const Vec3 psi_i = 0.5 * Vec3(std::cos(theta / 2.0), 0.0, std::sin(theta / 2.0));
  const Vec3 psi_f = 0.5 * Vec3(std::cos(theta / 2.0), 0.0, -std::sin(theta / 2.0));
  const Vec3 centre = axis.dot(psi_i) * axis;
  const Vec3 u = psi_i - centre;
  const Vec3 v = psi_f - centre;
  const Vec3 w = u.cross(v);
  const double a = std::atan2(w.norm(), u.dot(v));
  const double orientation = w.dot(axis);
  if (orientation > 0.0) return a;
  if (orientation < 0.0) return kTwoPi - a;
  return kPi;
}

SweepRecord tau_of_phi(double theta, const WindSpec& wind, double phi) {
  SweepRecord r;
  r.phi = phi;
  r.omega = omega_of_phi(wind, phi);
  r.rho = rho_of_phi(theta, phi);
  r.alpha = alpha_of_phi(theta, phi);
  r.tau = r.alpha / r.omega;
  return r;
}

SweepRecord tau_of_phi(const CanonicalTask& task, double phi) {
  return tau_of_phi(task.theta(), task.wind, phi);
}

std::vector<SweepRecord> sweep(const CanonicalTask& task, int n_points) {
  if (n_points < 16) {
    throw InvalidArgumentError("sweep: need at least 16 points, got " + std::to_string(n_points));
  }
  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    out.push_back(tau_of_phi(task, kTwoPi * k / n_points));
  }
  return out;
}

double dtau_dphi(double theta, const WindSpec& wind, double phi) {
  const SweepRecord r = tau_of_phi(theta, wind, phi);
  double dalpha = 0.0;
  if (!is_antipodal(theta)) {
    const double s = std::sin(phi);
    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    dalpha = -std::sin(theta) * std::cos(phi) / (s * s * ch * ch + sh * sh);
  }
  double domega = 0.0;
  if (!wind.is_zero()) {
    const double eps = wind.epsilon();
    const Vec3& n = wind.axis();
    const double b = std::sqrt(2.0 * eps) * wind.in_plane_projection(phi);
    const double db = std::sqrt(2.0 * eps) * (-n.x() * std::sin(phi) + n.y() * std::cos(phi));
    domega = db * r.omega / std::sqrt(b * b + 2.0 * (1.0 - eps));
  }
  return (dalpha * r.omega - r.alpha * domega) / (r.omega * r.omega);
}

HermitianOperator total_hamiltonian(const CanonicalTask& task, double phi) {
  const double omega = omega_of_phi(task.wind, phi);
  const Vec3 axis_canonical = 0.5 * omega * Vec3(std::cos(phi), std::sin(phi), 0.0);
  return pauli_compose(task.h0_trace_part, task.frame.to_lab(axis_canonical));
}

double transport_fidelity(const HermitianOperator& h, const StateVector& psi_i,
                          const StateVector& psi_f, double t) {
  const ComplexVector evolved = expm_unitary(h, t) * psi_i.amplitudes();
  return std::norm(psi_f.amplitudes().dot(evolved));
}

namespace {

double find_phi_star(const CanonicalTask& task, const OptimizerSettings& settings) {
  if (task.wind.is_zero()) return kPi / 2.0;

  const int n = settings.grid_points;
  const double step = kTwoPi / n;
  auto tau = [&](double phi) { return tau_of_phi(task, wrap_angle(phi)).tau; };
  auto slope = [&](double phi) { return dtau_dphi(task.theta(), task.wind, wrap_angle(phi)); };

  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = tau(step * k);

  LineMinimum best{0.0, tau(0.0)};
  auto consider = [&](LineMinimum m) {
    m.x = wrap_angle(m.x);
    if (m.value < best.value || (m.value == best.value && m.x < best.x)) best = m;
  };
  consider({kPi, tau(kPi)});

  // Grid-local minima, best first.
  std::vector<int> minima;
  for (int k = 0; k < n; ++k) {
    const double here = grid[static_cast<std::size_t>(k)];
    const double left = grid[static_cast<std::size_t>((k + n - 1) % n)];
    const double right = grid[static_cast<std::size_t>((k + 1) % n)];
    if (here <= left && here <= right) minima.push_back(k);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) {
    return grid[static_cast<std::size_t>(a)] < grid[static_cast<std::size_t>(b)];
  });
  constexpr std::size_t kMaxRefined = 64;
  if (minima.size() > kMaxRefined) minima.resize(kMaxRefined);

  for (int k : minima) {
    const double lo = step * (k - 1);
    const double hi = step * (k + 1);
    // Split the bracket at multiples of pi so no search crosses phi = 0 or pi.
    std::vector<double> cuts{lo};
    for (double m = std::ceil(lo / kPi); m * kPi < hi; m += 1.0) {
      if (m * kPi > lo) cuts.push_back(m * kPi);
    }
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = cuts[i];
      double b = cuts[i + 1];
      if (slope(a) < 0.0 && slope(b) > 0.0) {
        // tau is flat at an interior minimum, so locate it as a root of the
        // slope, which is well conditioned.
        while (true) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          (slope(mid) < 0.0 ? a : b) = mid;
        }
        const double x = std::abs(slope(a)) <= std::abs(slope(b)) ? a : b;
        consider({x, tau(x)});
      } else {
        consider(golden_section_minimize(tau, a, b, settings.tol));
      }
    }
  }
  return best.x;
}

}  // namespace

NavigationSolution optimize(const CanonicalTask& task, const OptimizerSettings& settings) {
  if (settings.grid_points < 64) {
    throw InvalidArgumentError("optimize: grid_points must be at least 64");
  }
  if (!(settings.tol > 0.0)) throw InvalidArgumentError("optimize: tol must be positive");

  NavigationSolution sol;
  sol.phi_star = find_phi_star(task, settings);
  const SweepRecord rec = tau_of_phi(task, sol.phi_star);
  sol.omega_star = rec.omega;
  sol.alpha_star = rec.alpha;
  sol.tau_star = rec.tau;
  sol.theta = task.theta();
  sol.H_total = total_hamiltonian(task, sol.phi_star);
  sol.H_control = sol.H_total - task.h0;
  sol.constraint_residual = std::abs(hs_trace_product(sol.H_control, sol.H_control) - 1.0);
  sol.fidelity_check =
      transport_fidelity(sol.H_total, task.psi_initial, task.psi_final, sol.tau_star);
  sol.zero_wind = task.wind.is_zero();
  sol.h0_trace_part = task.h0_trace_part;
  sol.wind = task.wind;
  return sol;
}

NavigationSolution optimize(const NavigationTask& task, const OptimizerSettings& settings) {
  return optimize(canonicalize(task), settings);
}

}  // namespace qnav
