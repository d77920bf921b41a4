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

#include "jointmeas/sequential.hpp"

#include <cmath>

namespace jointmeas {

SqrtInstrument::SqrtInstrument(double eta, const BlochVector& axis)
    : eta_(eta), axis_(axis) {
    if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
        throw ValidationError("sharpness must lie in [0, 1]");
    }
    require_unit(axis, "instrument axis");
    // M_+- = sqrt((I +- eta axis.sigma)/2): square roots of the unsharp
    // effects, taken on the eigenbasis of axis.sigma.
    const double hi = std::sqrt(0.5 * (1.0 + eta));
    const double lo = std::sqrt(0.5 * (1.0 - eta));
    a_ = 0.5 * (hi + lo);
    b_ = 0.5 * (hi - lo);
}

Mat2 SqrtInstrument::kraus(Sign s) const {
    return to_matrix(a_, (sign_value(s) * b_) * axis_);
}

namespace {

// Hermitian sandwich (aI + c.sigma)(pI + q.sigma)(aI + c.sigma) for real
// coefficient vectors, expanded with the Pauli product rule. The
// imaginary cross terms cancel pairwise, leaving
//   scalar: a^2 p + 2a (c.q) + p |c|^2
//   vector: 2ap c + 2(c.q) c + (a^2 - |c|^2) q.
PovmElement sandwich(double a, const BlochVector& c, double p,
                     const BlochVector& q) {
    const double cq = c.dot(q);
    const double scalar = a * a * p + 2.0 * a * cq + p * c.norm_squared();
    const BlochVector vector = (2.0 * a * p) * c + (2.0 * cq) * c +
                               (a * a - c.norm_squared()) * q;
    return PovmElement(scalar, vector);
}

} // namespace

JointPovm sequential_joint_povm(const SqrtInstrument& inst,
                                const ObservablePair& obs) {
    if (axis_angle(inst.axis(), obs.n_a()) > kConstraintTol ||
        inst.axis().dot(obs.n_a()) < 0.0) {
        throw ValidationError(
            "instrument axis must coincide with observable A");
    }
    std::array<PovmElement, 4> elements = {
        sandwich(inst.a(), inst.b() * inst.axis(), 0.5, 0.5 * obs.n_b()),
        sandwich(inst.a(), inst.b() * inst.axis(), 0.5, -0.5 * obs.n_b()),
        sandwich(inst.a(), -inst.b() * inst.axis(), 0.5, 0.5 * obs.n_b()),
        sandwich(inst.a(), -inst.b() * inst.axis(), 0.5, -0.5 * obs.n_b()),
    };
    return JointPovm(elements);
}

DisturbanceReport disturbance_check(const SqrtInstrument& inst,
                                    const ObservablePair& obs) {
    const JointPovm povm = sequential_joint_povm(inst, obs);
    const NonidealityReport conformity = check_nonideal(povm, obs);

    DisturbanceReport report;
    const double s = std::sin(obs.theta());
    report.bound = s * s;
    report.b_deviation = conformity.b.deviation;
    report.applicable = conformity.a.conforming && conformity.b.conforming;
    if (!report.applicable) {
        return report;
    }

    report.x_a = accuracy(build_channel(povm, obs, Observable::A));
    report.x_b = accuracy(build_channel(povm, obs, Observable::B));
    report.error_a = error_param(report.x_a);
    report.disturbance_b = error_param(report.x_b);
    const ErrorProductVerdict verdict = error_product_check(
        AccuracyPair(report.x_a, report.x_b, obs.theta()));
    report.product = verdict.product;
    report.satisfied = verdict.satisfied;
    return report;
}

} // namespace jointmeas
