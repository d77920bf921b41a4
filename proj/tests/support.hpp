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

// Shared generators for randomized tests. The POVM generator here is
// deliberately independent of the library's sampler: it draws arbitrary
// valid joint POVMs with no alignment constraint on the marginals.

#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "jointmeas/bloch.hpp"
#include "jointmeas/rng.hpp"

namespace jointmeas::testing {

inline BlochVector to_bloch(const std::array<double, 3>& v) {
    return {v[0], v[1], v[2]};
}

inline BlochVector random_unit(Rng& rng) { return to_bloch(rng.unit_vector()); }

/// Mixed or (occasionally) pure state.
inline QubitState random_state(Rng& rng) {
    if (rng.uniform() < 0.2) {
        return QubitState(random_unit(rng));
    }
    return QubitState(to_bloch(rng.in_ball(1.0)));
}

/// Unit vector at a fixed angle from `from`, with a random azimuth.
inline BlochVector unit_at_angle(Rng& rng, const BlochVector& from,
                                 double theta) {
    // Build an orthonormal basis around `from`.
    const BlochVector helper =
        std::abs(from.x) < 0.9 ? BlochVector{1, 0, 0} : BlochVector{0, 1, 0};
    BlochVector u = from.cross(helper);
    u = (1.0 / u.norm()) * u;
    const BlochVector v = from.cross(u);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const BlochVector perp = std::cos(phi) * u + std::sin(phi) * v;
    return std::cos(theta) * from + std::sin(theta) * perp;
}

inline ObservablePair random_observables(Rng& rng, double theta_min = 0.05) {
    const BlochVector n_a = random_unit(rng);
    const double theta = rng.uniform(theta_min, M_PI - theta_min);
    return ObservablePair(n_a, unit_at_angle(rng, n_a, theta));
}

/// Arbitrary valid joint POVM: three element vectors drawn freely, the
/// fourth fixed by the zero-sum constraint, scalar slack spread over a
/// random simplex. No nonideality structure is imposed.
inline JointPovm random_general_povm(Rng& rng) {
    while (true) {
        const BlochVector x0 = to_bloch(rng.in_ball(0.30));
        const BlochVector x1 = to_bloch(rng.in_ball(0.30));
        const BlochVector x2 = to_bloch(rng.in_ball(0.30));
        const BlochVector x3 = -(x0 + x1 + x2);
        const double sum =
            x0.norm() + x1.norm() + x2.norm() + x3.norm();
        if (sum > 1.0) {
            continue;
        }
        const auto slack = rng.simplex4();
        const double extra = 1.0 - sum;
        return JointPovm({PovmElement(x0.norm() + slack[0] * extra, x0),
                          PovmElement(x1.norm() + slack[1] * extra, x1),
                          PovmElement(x2.norm() + slack[2] * extra, x2),
                          PovmElement(x3.norm() + slack[3] * extra, x3)});
    }
}

} // namespace jointmeas::testing
