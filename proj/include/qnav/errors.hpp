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

#include <stdexcept>
#include <string>

namespace qnav {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input that does not fit any more specific category.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// The background Hamiltonian has tr(H0^2) >= 1, so no admissible control can
/// overcome it in every direction.
class WindTooStrongError : public Error {
 public:
  using Error::Error;
};

/// Initial and target states coincide (up to phase); the voyage time is zero
/// and no Hamiltonian is selected.
class DegenerateTaskError : public Error {
 public:
  using Error::Error;
};

/// Target gate equals the initial gate up to a global phase on the chosen
/// logarithm branch, so tr(X^2) = 0.
class NoOpGateError : public Error {
 public:
  using Error::Error;
};

/// The background Hamiltonian couples the span of the two states to its
/// orthogonal complement.
class NotInvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnav
