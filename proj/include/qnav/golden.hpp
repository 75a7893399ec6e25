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

#include <cmath>
#include <utility>

namespace qnav {

struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of f on [lo, hi], stopping when the
/// bracket is narrower than tol. f is assumed unimodal on the bracket; for
/// other functions a local minimum is returned. The endpoints are compared
/// against the interior result so a monotone f yields the better endpoint.
template <class F>
LineMinimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  if (hi < lo) std::swap(lo, hi);
  const double a0 = lo;
  const double b0 = hi;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  LineMinimum best = fc <= fd ? LineMinimum{c, fc} : LineMinimum{d, fd};
  const double fa = f(a0);
  if (fa < best.value) best = {a0, fa};
  const double fb = f(b0);
  if (fb < best.value) best = {b0, fb};
  return best;
}

/// Golden-section search for a maximum of f on [lo, hi].
template <class F>
LineMinimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  LineMinimum m = golden_section_minimize([&](double x) { return -f(x); }, lo, hi, tol);
  m.value = -m.value;
  return m;
}

}  // namespace qnav
