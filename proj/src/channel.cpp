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

#include "jointmeas/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace jointmeas {

NonidealChannel::NonidealChannel(
    const std::array<std::array<double, 2>, 2>& f, int orientation,
    double r_coef, double x_norm)
    : f_(f), orientation_(orientation), r_coef_(r_coef), x_norm_(x_norm) {
    if (orientation != 1 && orientation != -1) {
        throw ValidationError("channel: orientation must be +1 or -1");
    }
    for (int col = 0; col < 2; ++col) {
        double sum = 0.0;
        for (int row = 0; row < 2; ++row) {
            const double entry = this->f(row, col);
            if (!std::isfinite(entry) || entry < -kConstraintTol ||
                entry > 1.0 + kConstraintTol) {
                throw ValidationError(
                    "channel: transition matrix entries must lie in [0, 1]");
            }
            sum += entry;
        }
        if (std::abs(sum - 1.0) > kConstraintTol) {
            throw ValidationError(
                "channel: transition matrix columns must sum to 1 "
                "(stochasticity)");
        }
    }
    if (std::abs(std::abs(det()) - 2.0 * x_norm) > kConstraintTol) {
        throw ValidationError(
            "channel: |det F| must equal 2|x| of the marginal");
    }
}

namespace {

ConformityVerdict check_marginal(const PovmElement& marginal,
                                 const BlochVector& axis) {
    ConformityVerdict v;
    if (marginal.x().norm() <= kConstraintTol) {
        v.conforming = true;
        v.uninformative = true;
        v.deviation = 0.0;
        return v;
    }
    v.deviation = axis_angle(marginal.x(), axis);
    v.conforming = v.deviation < kParallelTol;
    v.uninformative = false;
    return v;
}

} // namespace

NonidealityReport check_nonideal(const JointPovm& povm,
                                 const ObservablePair& obs) {
    return {check_marginal(povm.marginal(Observable::A), obs.n_a()),
            check_marginal(povm.marginal(Observable::B), obs.n_b())};
}

NonidealChannel channel_from_marginal(const PovmElement& marginal,
                                      const BlochVector& axis) {
    const ConformityVerdict verdict = check_marginal(marginal, axis);
    if (!verdict.conforming) {
        throw NonidealityError(
            "marginal is not a nonideal measurement of the requested axis "
            "(deviation " +
                std::to_string(verdict.deviation) + " rad)",
            verdict.deviation);
    }
    const double r = marginal.r_coef();
    const double xn = marginal.x().norm();
    // Orientation convention: s = sign(x . n), with s = +1 at x = 0. The
    // accuracy (det F)^2 does not depend on it; fixing it makes F
    // reproducible.
    const int s = marginal.x().dot(axis) < 0.0 ? -1 : +1;
    const double sx = s * xn;
    const std::array<std::array<double, 2>, 2> f = {{
        {{r + sx, r - sx}},
        {{1.0 - r - sx, 1.0 - r + sx}},
    }};
    return NonidealChannel(f, s, r, xn);
}

NonidealChannel build_channel(const JointPovm& povm, const ObservablePair& obs,
                              Observable which) {
    return channel_from_marginal(povm.marginal(which), obs.axis(which));
}

double accuracy(const NonidealChannel& channel) {
    const double d = channel.det();
    return std::min(d * d, 1.0);
}

double error_param(double accuracy) {
    if (!std::isfinite(accuracy) || accuracy < 0.0 ||
        accuracy > 1.0 + kConstraintTol) {
        throw ValidationError("accuracy must lie in [0, 1]");
    }
    if (accuracy == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, 1.0 / accuracy - 1.0);
}

MarginalKind classify_marginal(const NonidealChannel& channel) {
    const double acc = accuracy(channel);
    if (acc >= 1.0 - kConstraintTol) {
        return MarginalKind::Projective;
    }
    if (acc <= kConstraintTol) {
        return MarginalKind::Uninformative;
    }
    return MarginalKind::Intermediate;
}

AccuracyPair::AccuracyPair(double x_a, double x_b, double theta)
    : x_a_(x_a), x_b_(x_b), theta_(theta) {
    const auto check = [](double v, const char* what) {
        if (!std::isfinite(v) || v < -kConstraintTol ||
            v > 1.0 + kConstraintTol) {
            throw ValidationError(std::string(what) +
                                  " accuracy must lie in [0, 1]");
        }
    };
    check(x_a, "A");
    check(x_b, "B");
    if (!std::isfinite(theta) || theta <= 0.0 || theta >= M_PI) {
        throw ValidationError("theta must lie strictly between 0 and pi");
    }
    x_a_ = std::clamp(x_a, 0.0, 1.0);
    x_b_ = std::clamp(x_b, 0.0, 1.0);
}

TradeoffVerdict tradeoff_check(const AccuracyPair& pair) {
    const double c = std::cos(pair.theta());
    TradeoffVerdict v;
    v.lhs = pair.x_a() + pair.x_b() - pair.x_a() * pair.x_b() * c * c;
    v.slack = 1.0 - v.lhs;
    v.satisfied = v.lhs <= 1.0 + kConstraintTol;
    return v;
}

ErrorProductVerdict error_product_check(const AccuracyPair& pair) {
    const double s = std::sin(pair.theta());
    ErrorProductVerdict v;
    v.bound = s * s;
    if (pair.x_a() == 0.0 || pair.x_b() == 0.0) {
        v.product = std::numeric_limits<double>::infinity();
        v.satisfied = true;
        v.trivial = true;
        return v;
    }
    v.product = error_param(pair.x_a()) * error_param(pair.x_b());
    // Decide on the cross-multiplied form (1-X_A)(1-X_B) >= X_A X_B sin^2:
    // every term is O(1), so the comparison keeps full absolute precision
    // even when one error parameter blows up near accuracy 1.
    const double gap = (1.0 - pair.x_a()) * (1.0 - pair.x_b()) -
                       pair.x_a() * pair.x_b() * v.bound;
    v.satisfied = gap >= -kConstraintTol;
    v.trivial = false;
    return v;
}

} // namespace jointmeas
