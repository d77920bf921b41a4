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
 * Value types and exact algebra for qubit states, observables, and POVMs
 * in the Bloch representation.
 *
 * Every Hermitian qubit operator used here lives in the real span of
 * {I, sigma_x, sigma_y, sigma_z} and is stored as a scalar coefficient
 * plus a real three-vector. Probabilities reduce to dot products, which
 * keeps the arithmetic exact to a few ulp and easy to cross-check against
 * the dense 2x2 complex-matrix form (to_matrix below).
 *
 * All types are immutable values validated at construction; operations
 * are pure functions and safe to call concurrently.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "jointmeas/errors.hpp"

namespace jointmeas {

/// Absolute tolerance for structural constraint checks (sums of at most
/// four double-precision terms).
inline constexpr double kConstraintTol = 1e-12;

/// Angular tolerance below which two directions count as parallel.
inline constexpr double kParallelTol = 1e-9;

/// Binary measurement outcome, ordered so it can index arrays.
enum class Sign : int { Plus = 0, Minus = 1 };

inline int sign_value(Sign s) { return s == Sign::Plus ? +1 : -1; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// The two observables of a simultaneous measurement.
enum class Observable : int { A = 0, B = 1 };

/// Real three-vector: a state polarization, a measurement direction, or a
/// POVM coefficient vector.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm_squared() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_squared()); }

    double dot(const BlochVector& o) const {
        return x * o.x + y * o.y + z * o.z;
    }

    BlochVector cross(const BlochVector& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline BlochVector operator-(const BlochVector& a) {
    return {-a.x, -a.y, -a.z};
}
inline BlochVector operator*(double s, const BlochVector& v) {
    return {s * v.x, s * v.y, s * v.z};
}

/// Angle between two nonzero vectors, computed via atan2 so that it stays
/// accurate near 0 and pi where acos loses precision.
double angle_between(const BlochVector& a, const BlochVector& b);

/// Angle between a vector and the *axis* spanned by a direction, i.e. the
/// smaller of the angles to +dir and -dir. In [0, pi/2].
double axis_angle(const BlochVector& v, const BlochVector& axis);

/// Throws ValidationError unless v is a finite unit vector.
void require_unit(const BlochVector& v, const char* what);

/// Qubit density operator (I + r.sigma)/2, stored by its polarization r.
class QubitState {
  public:
    explicit QubitState(const BlochVector& r);

    static QubitState maximally_mixed() { return QubitState({0, 0, 0}); }

    const BlochVector& polarization() const { return r_; }

  private:
    BlochVector r_;
};

/// A pair of +-1-valued observables n_a.sigma and n_b.sigma. Collinear
/// pairs are rejected: the simultaneous-measurement trade-off is
/// degenerate at angle 0 or pi.
class ObservablePair {
  public:
    ObservablePair(const BlochVector& n_a, const BlochVector& n_b);

    const BlochVector& n_a() const { return n_a_; }
    const BlochVector& n_b() const { return n_b_; }
    const BlochVector& axis(Observable which) const {
        return which == Observable::A ? n_a_ : n_b_;
    }

    /// Angle between the two measurement directions, in (0, pi).
    double theta() const { return theta_; }

  private:
    BlochVector n_a_;
    BlochVector n_b_;
    double theta_;
};

/// One POVM effect r*I + x.sigma. Positivity requires |x| <= r and
/// boundedness by the identity requires r + |x| <= 1.
class PovmElement {
  public:
    PovmElement(double r_coef, const BlochVector& x);

    double r_coef() const { return r_coef_; }
    const BlochVector& x() const { return x_; }

  private:
    double r_coef_;
    BlochVector x_;
};

/// The projector onto outcome `s` of direction `dir`: (I +- dir.sigma)/2.
PovmElement projector_element(const BlochVector& dir, Sign s);

/// Four-outcome POVM of a simultaneous measurement, indexed by the outcome
/// pair (i, j). Elements must sum to the identity: sum r = 1 and
/// sum x = 0 (each element is already positive by construction).
class JointPovm {
  public:
    static constexpr int kElements = 4;

    static int index(Sign i, Sign j) {
        return static_cast<int>(i) * 2 + static_cast<int>(j);
    }
    static Sign outcome_a(int index) {
        return index < 2 ? Sign::Plus : Sign::Minus;
    }
    static Sign outcome_b(int index) {
        return index % 2 == 0 ? Sign::Plus : Sign::Minus;
    }

    /// Elements in the fixed order (+,+), (+,-), (-,+), (-,-).
    explicit JointPovm(std::array<PovmElement, kElements> elements);

    const PovmElement& element(Sign i, Sign j) const {
        return elements_[static_cast<std::size_t>(index(i, j))];
    }
    const std::array<PovmElement, kElements>& elements() const {
        return elements_;
    }

    /// Marginal effect for outcome '+' of the given observable.
    PovmElement marginal(Observable which) const;

  private:
    std::array<PovmElement, kElements> elements_;
};

/// Probability of the effect firing on the state: r + x.r, clamped to
/// [0, 1] after the floating-point tolerance window.
double outcome_probability(const QubitState& state, const PovmElement& element);

/// Probability (1 +- dir.r)/2 of a projective outcome along a unit
/// direction.
double projector_probability(const QubitState& state, const BlochVector& dir,
                             Sign s);

/// Marginal '+' effects of both observables.
struct MarginalPair {
    PovmElement a;
    PovmElement b;
};
MarginalPair marginals(const JointPovm& povm);

/// Dense 2x2 complex matrix, row-major. Used as an independent oracle for
/// the Bloch-vector arithmetic, not on any production path.
struct Mat2 {
    std::complex<double> m00, m01, m10, m11;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    std::complex<double> trace() const { return m00 + m11; }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01),
                std::conj(m11)};
    }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(std::complex<double> s, const Mat2& a);

/// Explicit matrix form r*I + x.sigma of an effect.
Mat2 to_matrix(const PovmElement& element);
Mat2 to_matrix(double r_coef, const BlochVector& x);

/// Density matrix (I + r.sigma)/2.
Mat2 to_matrix(const QubitState& state);

/// Eigenvalues {lo, hi} of a Hermitian 2x2 matrix.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

} // namespace jointmeas
