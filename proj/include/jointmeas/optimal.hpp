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
 * Construction of accuracy-optimal joint POVMs, a feasible-POVM sampler,
 * and a numerical sweep of the accessible accuracy region.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "jointmeas/bloch.hpp"
#include "jointmeas/rng.hpp"

namespace jointmeas {

/// Joint POVM achieving the trade-off bound with equal accuracies
/// X_A = X_B = 1/(1 + sin(theta)). Its four elements are proportional to
/// projectors onto the mutually orthogonal directions n_a + n_b and
/// n_a - n_b.
JointPovm optimal_povm(const ObservablePair& obs);

/// Largest accuracy X_B compatible with the trade-off bound at a given
/// X_A: (1 - x_a) / (1 - x_a cos^2 theta).
double boundary_curve(double theta, double x_a);

/// Draws a valid nonideal joint POVM whose marginal coefficient vectors
/// are a*n_a and b*n_b. With no magnitudes given, (a, b) themselves are
/// sampled across the accessible region. Magnitudes that no POVM can
/// realize exhaust the retry budget and raise FeasibilityError.
JointPovm sample_valid_povm(const ObservablePair& obs, Rng& rng,
                            std::optional<std::pair<double, double>>
                                magnitudes = std::nullopt,
                            int max_retries = 10000);

JointPovm sample_valid_povm(const ObservablePair& obs, std::uint64_t seed,
                            std::optional<std::pair<double, double>>
                                magnitudes = std::nullopt,
                            int max_retries = 10000);

/// One point of the accessible-region frontier.
struct RegionPoint {
    double x_a = 0.0;
    /// Best X_B found by the direct search at this X_A.
    double x_b = 0.0;
    /// Value of boundary_curve at this X_A.
    double x_b_boundary = 0.0;
    /// x_b_boundary - x_b (the unproven achievability gap).
    double gap = 0.0;
    /// A POVM realizing (x_a, x_b).
    std::optional<JointPovm> achieved_by;
};

struct SweepResult {
    double theta = 0.0;
    std::vector<RegionPoint> points;
};

/// Maximal X_B realizable at a fixed target X_A, found by multi-start
/// Nelder-Mead over the free element vector x_(+,+) with an exact inner
/// line search for the marginal magnitude. Returns the value and a
/// witness POVM.
std::pair<double, JointPovm> frontier_max(const ObservablePair& obs,
                                          double x_a_target,
                                          std::uint64_t seed,
                                          int restarts = 16);

/// Sweeps a uniform grid of target X_A values over [0, 1] and maximizes
/// X_B at each. Each grid point derives its own seed from the master
/// seed, so the result does not depend on evaluation order.
SweepResult region_sweep(const ObservablePair& obs, int grid_size,
                         std::uint64_t seed, bool keep_witnesses = false);

} // namespace jointmeas
