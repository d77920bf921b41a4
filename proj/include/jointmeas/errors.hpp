// Copyright 2026 The jointmeas Authors
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

namespace jointmeas {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A value violates a structural invariant (non-unit direction, POVM
/// normalization, stochasticity, ...). The message names the violated
/// constraint.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Input text could not be parsed (malformed JSON, missing keys, bad
/// outcome labels).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A POVM marginal does not point along the requested measurement axis,
/// so it is not a smeared version of that projective measurement.
class NonidealityError : public Error {
  public:
    NonidealityError(const std::string& msg, double deviation)
        : Error(msg), deviation_(deviation) {}

    /// Angle in radians between the marginal coefficient vector and the
    /// measurement axis (axis-symmetric, so always in [0, pi/2]).
    double deviation() const { return deviation_; }

  private:
    double deviation_;
};

/// The POVM sampler could not satisfy the requested marginal magnitudes.
class FeasibilityError : public Error {
  public:
    using Error::Error;
};

/// Estimation is impossible or singular (uninformative channel, boundary
/// outcome distribution, degenerate input state).
class EstimationError : public Error {
  public:
    using Error::Error;
};

} // namespace jointmeas
