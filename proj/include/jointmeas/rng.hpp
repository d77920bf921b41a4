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
 * Seeded random number generation.
 *
 * All stochastic operations in the library are keyed by a 64-bit seed.
 * Sub-streams (per trial, per grid point) derive their own seed as
 * derive_seed(master, index), so results are reproducible and independent
 * of evaluation order or worker count. Variates are produced from raw
 * mt19937_64 output rather than std:: distributions, whose sequences are
 * implementation-defined.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace jointmeas {

/// One step of the splitmix64 sequence; used for seed mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent sub-stream seed from a master seed and an index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= index + 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x2545f4914f6cdd1dULL);
}

/// Deterministic uniform variate source built on mt19937_64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 bits of precision.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform point on the unit sphere.
    std::array<double, 3> unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * M_PI);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

    /// Uniform point in the closed ball of the given radius.
    std::array<double, 3> in_ball(double radius) {
        const auto dir = unit_vector();
        const double r = radius * std::cbrt(uniform());
        return {r * dir[0], r * dir[1], r * dir[2]};
    }

    /// Uniform point on the standard 3-simplex (four nonnegative weights
    /// summing to 1).
    std::array<double, 4> simplex4() {
        std::array<double, 4> w{};
        double total = 0.0;
        for (auto& wi : w) {
            // Exponential variates normalized to a Dirichlet(1,1,1,1) draw.
            wi = -std::log1p(-uniform());
            total += wi;
        }
        for (auto& wi : w) {
            wi /= total;
        }
        return w;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace jointmeas
