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

/**
 * @file
 * Sequential measurement as a quantum instrument: an unsharp measurement
 * of A followed by a projective measurement of B, combined into one joint
 * POVM E(i,j) = M_i P_B(j) M_i.
 *
 * The instrument is the square-root (Lueders) one for the unsharp effects
 * (I +- eta n_a.sigma)/2 -- the canonical minimal-disturbance model.
 * Other instruments realize the same first-measurement statistics with
 * more disturbance; they can be modeled by composing additional channels
 * before the B measurement.
 */

#pragma once

#include "jointmeas/bloch.hpp"
#include "jointmeas/channel.hpp"

namespace jointmeas {

/// Square-root instrument of an unsharp +-1 observable with sharpness
/// eta along a unit axis. Kraus operators M_+- = a I +- b axis.sigma with
/// a^2 + b^2 = 1/2 (completeness) and 2ab = eta/2.
class SqrtInstrument {
  public:
    SqrtInstrument(double eta, const BlochVector& axis);

    double eta() const { return eta_; }
    const BlochVector& axis() const { return axis_; }
    /// Identity coefficient of the Kraus pair.
    double a() const { return a_; }
    /// Magnitude of the sigma coefficient of the Kraus pair.
    double b() const { return b_; }

    /// Dense form of M_s, for oracle checks.
    Mat2 kraus(Sign s) const;

  private:
    double eta_;
    BlochVector axis_;
    double a_;
    double b_;
};

/// Joint POVM of the instrument followed by a projective measurement of
/// obs.n_b. The instrument axis must coincide with obs.n_a. The
/// A-marginal is always a conforming nonideal measurement with accuracy
/// eta^2; the B-marginal picks up an n_a component unless the axes are
/// orthogonal or eta is 0.
JointPovm sequential_joint_povm(const SqrtInstrument& inst,
                                const ObservablePair& obs);

/// Error/back-action reading of the trade-off for the sequential scheme.
struct DisturbanceReport {
    /// Both marginals of the sequential POVM conform, so the bound applies.
    bool applicable = false;
    double x_a = 0.0;
    double x_b = 0.0;
    /// 1/X_A - 1 and 1/X_B - 1; +infinity at vanishing accuracy.
    double error_a = 0.0;
    double disturbance_b = 0.0;
    /// error_a * disturbance_b vs sin^2(theta); meaningful when applicable.
    double product = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    /// Axis angle of the B-marginal off n_b when not applicable.
    double b_deviation = 0.0;
};

DisturbanceReport disturbance_check(const SqrtInstrument& inst,
                                    const ObservablePair& obs);

} // namespace jointmeas
