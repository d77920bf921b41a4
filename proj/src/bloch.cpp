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

#include "jointmeas/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace jointmeas {

double angle_between(const BlochVector& a, const BlochVector& b) {
    const double cross = a.cross(b).norm();
    const double dot = a.dot(b);
    return std::atan2(cross, dot);
}

double axis_angle(const BlochVector& v, const BlochVector& axis) {
    const double cross = v.cross(axis).norm();
    const double dot = std::abs(v.dot(axis));
    return std::atan2(cross, dot);
}

void require_unit(const BlochVector& v, const char* what) {
    if (!v.finite()) {
        throw ValidationError(std::string(what) +
                              ": components must be finite");
    }
    if (std::abs(v.norm() - 1.0) > kConstraintTol) {
        throw ValidationError(std::string(what) +
                              ": direction must be a unit vector");
    }
}

QubitState::QubitState(const BlochVector& r) : r_(r) {
    if (!r.finite()) {
        throw ValidationError("state polarization: components must be finite");
    }
    if (r.norm() > 1.0 + kConstraintTol) {
        throw ValidationError(
            "state polarization: |r| must not exceed 1 "
            "(density operator must be positive semidefinite)");
    }
}

ObservablePair::ObservablePair(const BlochVector& n_a, const BlochVector& n_b)
    : n_a_(n_a), n_b_(n_b) {
    require_unit(n_a, "observable A");
    require_unit(n_b, "observable B");
    theta_ = angle_between(n_a, n_b);
    if (theta_ < kParallelTol || theta_ > M_PI - kParallelTol) {
        throw ValidationError(
            "observable pair: directions must not be collinear "
            "(angle must lie strictly between 0 and pi)");
    }
}

PovmElement::PovmElement(double r_coef, const BlochVector& x)
    : r_coef_(r_coef), x_(x) {
    if (!std::isfinite(r_coef) || !x.finite()) {
        throw ValidationError("POVM element: coefficients must be finite");
    }
    const double xn = x.norm();
    if (xn > r_coef + kConstraintTol) {
        throw ValidationError(
            "POVM element: |x| must not exceed r (positivity)");
    }
    if (r_coef + xn > 1.0 + kConstraintTol) {
        throw ValidationError(
            "POVM element: r + |x| must not exceed 1 (element bounded by "
            "the identity)");
    }
}

PovmElement projector_element(const BlochVector& dir, Sign s) {
    require_unit(dir, "projector direction");
    return PovmElement(0.5, 0.5 * sign_value(s) * dir);
}

JointPovm::JointPovm(std::array<PovmElement, kElements> elements)
    : elements_(std::move(elements)) {
    double r_sum = 0.0;
    BlochVector x_sum{};
    for (const auto& e : elements_) {
        r_sum += e.r_coef();
        x_sum = x_sum + e.x();
    }
    if (std::abs(r_sum - 1.0) > kConstraintTol) {
        throw ValidationError(
            "joint POVM: sum of r coefficients must equal 1");
    }
    if (x_sum.norm() > kConstraintTol) {
        throw ValidationError(
            "joint POVM: sum of x vectors must vanish");
    }
}

PovmElement JointPovm::marginal(Observable which) const {
    const auto& pp = element(Sign::Plus, Sign::Plus);
    const auto& other = which == Observable::A
                            ? element(Sign::Plus, Sign::Minus)
                            : element(Sign::Minus, Sign::Plus);
    return PovmElement(pp.r_coef() + other.r_coef(), pp.x() + other.x());
}

double outcome_probability(const QubitState& state,
                           const PovmElement& element) {
    const double p = element.r_coef() + element.x().dot(state.polarization());
    return std::clamp(p, 0.0, 1.0);
}

double projector_probability(const QubitState& state, const BlochVector& dir,
                             Sign s) {
    require_unit(dir, "projector direction");
    const double p =
        0.5 * (1.0 + sign_value(s) * dir.dot(state.polarization()));
    return std::clamp(p, 0.0, 1.0);
}

MarginalPair marginals(const JointPovm& povm) {
    return {povm.marginal(Observable::A), povm.marginal(Observable::B)};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

Mat2 operator*(std::complex<double> s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

Mat2 to_matrix(double r_coef, const BlochVector& x) {
    const std::complex<double> i(0.0, 1.0);
    return {r_coef + x.z, x.x - i * x.y, x.x + i * x.y, r_coef - x.z};
}

Mat2 to_matrix(const PovmElement& element) {
    return to_matrix(element.r_coef(), element.x());
}

Mat2 to_matrix(const QubitState& state) {
    return to_matrix(0.5, 0.5 * state.polarization());
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double mean = 0.5 * (m.m00.real() + m.m11.real());
    const double half_diff = 0.5 * (m.m00.real() - m.m11.real());
    const double radius =
        std::sqrt(half_diff * half_diff + std::norm(m.m01));
    return {mean - radius, mean + radius};
}

} // namespace jointmeas
