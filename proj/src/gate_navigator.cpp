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

#include "qnav/gate_navigator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qnav/errors.hpp"

namespace qnav {
namespace {

constexpr Complex kI{0.0, 1.0};
// tr(X^2) below this is treated as a no-op gate.
constexpr double kNoOpThreshold = 1e-20;

double wrap_principal(double x) {
  double y = std::remainder(x, 2.0 * std::numbers::pi);
  if (y <= -std::numbers::pi) y += 2.0 * std::numbers::pi;
  return y;
}

// Calls fn for every vector in [-k, k]^n with zero sum, in lexicographic order.
template <class Fn>
void for_each_balanced_branch(std::size_t n, int k, Fn&& fn) {
  std::vector<int> b(n, -k);
  while (true) {
    int sum = 0;
    for (int v : b) sum += v;
    if (sum == 0) fn(b);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (b[i] < k) {
        ++b[i];
        std::fill(b.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.end(), -k);
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

void validate(const GateTask& task) {
  const Eigen::Index n = task.u_initial.rows();
  if (task.u_initial.cols() != n || task.u_final.rows() != n || task.u_final.cols() != n) {
    throw DimensionError("gate task: unitaries must be square and of equal size");
  }
  if (n < 2) throw DimensionError("gate task: dimension must be at least 2");
  if (task.h0.dim() != n) throw DimensionError("gate task: background dimension mismatch");
  if (!is_unitary(task.u_initial)) throw NotUnitaryError("gate task: u_initial is not unitary");
  if (!is_unitary(task.u_final)) throw NotUnitaryError("gate task: u_final is not unitary");
  const HermitianOperator& w = split_trace(task.h0).traceless;
  const double eps = hs_trace_product(w, w);
  if (eps >= 1.0) {
    throw WindTooStrongError("gate task: tr(H0^2) = " + std::to_string(eps) + " >= 1");
  }
}

double gate_voyage_time(double tr_h0_x, double tr_h0_sq, double tr_x_sq) {
  if (tr_x_sq <= kNoOpThreshold) return std::numeric_limits<double>::infinity();
  const double b = tr_h0_x;
  const double disc = std::sqrt(b * b + (1.0 - tr_h0_sq) * tr_x_sq);
  // (disc + b) cancels for a strong headwind; use (disc + b) = (1-e) q / (disc - b).
  const double inv_t = b >= 0.0 ? (disc + b) / tr_x_sq : (1.0 - tr_h0_sq) / (disc - b);
  return 1.0 / inv_t;
}

GateSolution solve_gate(const GateTask& task, const std::vector<int>& branch) {
  validate(task);
  const Eigen::Index n = task.dim();
  const double dn = static_cast<double>(n);
  if (!branch.empty() && branch.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("solve_gate: branch length must equal the dimension");
  }

  const ComplexMatrix v = task.u_final * task.u_initial.adjoint();
  const double det_phase = std::arg(v.determinant());
  const ComplexMatrix v_su = std::exp(-kI * (det_phase / dn)) * v;
  const HermitianOperator x_raw = logm_unitary(v_su, branch);
  const TraceSplit x_split = split_trace(x_raw);

  const TraceSplit h0_split = split_trace(task.h0);
  const HermitianOperator& wind = h0_split.traceless;

  GateSolution sol;
  sol.X = x_split.traceless;
  sol.branch = branch.empty() ? std::vector<int>(static_cast<std::size_t>(n), 0) : branch;

  const double q = hs_trace_product(sol.X, sol.X);
  if (q <= kNoOpThreshold) {
    throw NoOpGateError("solve_gate: target equals the initial gate up to phase on this branch");
  }
  const double b = hs_trace_product(wind, sol.X);
  const double e = hs_trace_product(wind, wind);
  sol.T = gate_voyage_time(b, e, q);

  sol.H_total = (1.0 / sol.T) * sol.X + h0_split.trace_part * HermitianOperator::identity(n);
  sol.H_control = sol.H_total - task.h0;
  sol.constraint_residual = std::abs(hs_trace_product(sol.H_control, sol.H_control) - 1.0);

  // exp(-i X) = e^{i c} v_su = e^{i (c - det_phase/n)} v, c = tr(X_raw)/n, and
  // the identity part of h0 adds e^{-i t0 T}.
  sol.global_phase =
      wrap_principal(x_split.trace_part - det_phase / dn - h0_split.trace_part * sol.T);
  const ComplexMatrix reached = expm_unitary(sol.H_total, sol.T) * task.u_initial;
  sol.gate_residual = max_abs_diff(reached, std::exp(kI * sol.global_phase) * task.u_final);
  return sol;
}

std::vector<GateSolution> enumerate_gate_branches(const GateTask& task, int max_offset) {
  if (max_offset < 0) throw InvalidArgumentError("max_offset must be non-negative");
  validate(task);
  std::vector<GateSolution> out;
  for_each_balanced_branch(static_cast<std::size_t>(task.dim()), max_offset,
                           [&](const std::vector<int>& b) {
                             try {
                               out.push_back(solve_gate(task, b));
                             } catch (const NoOpGateError&) {
                             }
                           });
  std::stable_sort(out.begin(), out.end(), [](const GateSolution& a, const GateSolution& b) {
    if (a.T != b.T) return a.T < b.T;
    return a.branch < b.branch;
  });
  return out;
}

GateSolution solve_gate_min_branch(const GateTask& task, int max_offset) {
  std::vector<GateSolution> all = enumerate_gate_branches(task, max_offset);
  if (all.empty()) {
    throw NoOpGateError("solve_gate_min_branch: every branch in range gives X = 0");
  }
  return std::move(all.front());
}

}  // namespace qnav
