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
 * Nonideal-measurement channels and the accuracy trade-off.
 *
 * A simultaneous measurement is a *nonideal* joint measurement of two
 * observables when each marginal POVM is a classically smeared version of
 * the corresponding projective measurement: the marginal coefficient
 * vector x_alpha must point along the measurement axis n_alpha. The
 * smearing is then captured by a 2x2 column-stochastic matrix F mapping
 * true outcome probabilities to observed ones, and the measurement
 * accuracy is (det F)^2 in [0, 1] -- 1 for a projective measurement, 0
 * when the marginal carries no information.
 *
 * Two equivalent trade-off bounds constrain the accuracies of a
 * simultaneous measurement of axes at angle theta:
 *
 *     X_A + X_B - X_A*X_B*cos^2(theta) <= 1
 *     E_A * E_B >= sin^2(theta),   with E = 1/X - 1.
 */

#pragma once

#include <array>
#include <cstdint>

#include "jointmeas/bloch.hpp"

namespace jointmeas {

/// Column-stochastic 2x2 transition matrix of a nonideal marginal, with
/// rows indexed by measured outcome and columns by true outcome. Carries
/// the marginal data it was built from: r (scalar coefficient), |x|, and
/// the orientation sign of x along the measurement axis.
class NonidealChannel {
  public:
    /// Validates stochasticity and |det F| = 2|x|.
    NonidealChannel(const std::array<std::array<double, 2>, 2>& f,
                    int orientation, double r_coef, double x_norm);

    const std::array<std::array<double, 2>, 2>& f() const { return f_; }
    double f(int row, int col) const {
        return f_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    }
    int orientation() const { return orientation_; }
    double r_coef() const { return r_coef_; }
    double x_norm() const { return x_norm_; }

    double det() const { return f_[0][0] * f_[1][1] - f_[0][1] * f_[1][0]; }

  private:
    std::array<std::array<double, 2>, 2> f_;
    int orientation_;
    double r_coef_;
    double x_norm_;
};

/// Whether a marginal qualifies as a nonideal measurement of its axis.
struct ConformityVerdict {
    bool conforming = false;
    /// x_alpha vanishes: conforming, but the marginal carries no
    /// information about the observable.
    bool uninformative = false;
    /// Axis angle between x_alpha and n_alpha in radians (0 when
    /// uninformative).
    double deviation = 0.0;
};

struct NonidealityReport {
    ConformityVerdict a;
    ConformityVerdict b;

    const ConformityVerdict& verdict(Observable which) const {
        return which == Observable::A ? a : b;
    }
};

/// Checks both marginals of the POVM against the measurement axes. A
/// marginal conforms when its x vector is parallel or antiparallel to the
/// axis within kParallelTol, or vanishes entirely.
NonidealityReport check_nonideal(const JointPovm& povm,
                                 const ObservablePair& obs);

/// Builds the transition matrix of the chosen marginal. Throws
/// NonidealityError (carrying the deviation angle) when the marginal does
/// not conform.
NonidealChannel build_channel(const JointPovm& povm, const ObservablePair& obs,
                              Observable which);

/// Channel built directly from a conforming marginal effect and its axis.
NonidealChannel channel_from_marginal(const PovmElement& marginal,
                                      const BlochVector& axis);

/// Measurement accuracy (det F)^2, equal to 4|x|^2.
double accuracy(const NonidealChannel& channel);

/// Error parameter 1/accuracy - 1. Accuracy 0 yields +infinity, the
/// distinguished no-information value.
double error_param(double accuracy);

enum class MarginalKind { Projective, Uninformative, Intermediate };

MarginalKind classify_marginal(const NonidealChannel& channel);

/// Accuracies of the two marginals together with the axis angle.
class AccuracyPair {
  public:
    AccuracyPair(double x_a, double x_b, double theta);

    double x_a() const { return x_a_; }
    double x_b() const { return x_b_; }
    double theta() const { return theta_; }

  private:
    double x_a_;
    double x_b_;
    double theta_;
};

struct TradeoffVerdict {
    /// X_A + X_B - X_A*X_B*cos^2(theta).
    double lhs = 0.0;
    /// 1 - lhs; negative when the bound is exceeded.
    double slack = 0.0;
    bool satisfied = false;
};

/// Evaluates the accuracy trade-off bound.
TradeoffVerdict tradeoff_check(const AccuracyPair& pair);

struct ErrorProductVerdict {
    /// E_A * E_B; +infinity when either accuracy vanishes.
    double product = 0.0;
    /// sin^2(theta).
    double bound = 0.0;
    bool satisfied = false;
    /// True when an accuracy of zero made the bound hold vacuously.
    bool trivial = false;
};

/// Evaluates the error-product form of the trade-off. Gives the same
/// verdict as tradeoff_check whenever both accuracies are positive.
ErrorProductVerdict error_product_check(const AccuracyPair& pair);

} // namespace jointmeas
