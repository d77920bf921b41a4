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

#include "jointmeas/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jointmeas/errors.hpp"

namespace jointmeas {

namespace {

// Element vectors of a joint POVM with marginals x_a = a*n_a, x_b = b*n_b,
// parameterized by the free vector x_(+,+).
struct ElementVectors {
    BlochVector pp, pm, mp, mm;

    static ElementVectors from_free(const BlochVector& x_pp,
                                    const BlochVector& x_a,
                                    const BlochVector& x_b) {
        return {x_pp, x_a - x_pp, x_b - x_pp, x_pp - x_a - x_b};
    }

    double norm_sum() const {
        return pp.norm() + pm.norm() + mp.norm() + mm.norm();
    }
};

JointPovm povm_from_vectors(const ElementVectors& v,
                            const std::array<double, 4>& slack_weights) {
    const std::array<BlochVector, 4> xs = {v.pp, v.pm, v.mp, v.mm};
    // Whatever scalar weight is not pinned down by positivity is split
    // across the elements; it never changes the marginal vectors, only
    // the r coefficients.
    const double total_slack = std::max(0.0, 1.0 - v.norm_sum());
    std::array<PovmElement, 4> elements = {
        PovmElement(xs[0].norm() + slack_weights[0] * total_slack, xs[0]),
        PovmElement(xs[1].norm() + slack_weights[1] * total_slack, xs[1]),
        PovmElement(xs[2].norm() + slack_weights[2] * total_slack, xs[2]),
        PovmElement(xs[3].norm() + slack_weights[3] * total_slack, xs[3]),
    };
    return JointPovm(elements);
}

} // namespace

JointPovm optimal_povm(const ObservablePair& obs) {
    const BlochVector sum = obs.n_a() + obs.n_b();
    const BlochVector diff = obs.n_a() - obs.n_b();
    // Positive root so that every r coefficient |x_ij| is nonnegative.
    const double r = 0.5 / (sum.norm() + diff.norm());
    const BlochVector x_pp = r * sum;
    const BlochVector x_pm = r * diff;
    std::array<PovmElement, 4> elements = {
        PovmElement(x_pp.norm(), x_pp),
        PovmElement(x_pm.norm(), x_pm),
        PovmElement(x_pm.norm(), -x_pm),
        PovmElement(x_pp.norm(), -x_pp),
    };
    return JointPovm(elements);
}

double boundary_curve(double theta, double x_a) {
    if (!std::isfinite(theta) || theta <= 0.0 || theta >= M_PI) {
        throw ValidationError("theta must lie strictly between 0 and pi");
    }
    if (!std::isfinite(x_a) || x_a < -kConstraintTol ||
        x_a > 1.0 + kConstraintTol) {
        throw ValidationError("accuracy must lie in [0, 1]");
    }
    x_a = std::clamp(x_a, 0.0, 1.0);
    const double c = std::cos(theta);
    const double denom = 1.0 - x_a * c * c;
    if (denom <= 0.0) {
        throw ValidationError("boundary is undefined at x_a cos^2 theta >= 1");
    }
    return (1.0 - x_a) / denom;
}

JointPovm sample_valid_povm(const ObservablePair& obs, Rng& rng,
                            std::optional<std::pair<double, double>>
                                magnitudes,
                            int max_retries) {
    double a;
    double b;
    if (magnitudes) {
        a = magnitudes->first;
        b = magnitudes->second;
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0 ||
            a > 0.5 + kConstraintTol || b > 0.5 + kConstraintTol) {
            throw ValidationError(
                "marginal magnitudes must lie in [0, 1/2]");
        }
    } else {
        // Sample across the accessible region, with a slice of draws
        // pinned to the boundary so that the near-equality regime is
        // exercised too.
        a = 0.5 * rng.uniform();
        const double b_max =
            0.5 * std::sqrt(boundary_curve(obs.theta(), 4.0 * a * a));
        b = rng.uniform() < 0.1 ? b_max : b_max * rng.uniform();
    }

    const BlochVector x_a = a * obs.n_a();
    const BlochVector x_b = b * obs.n_b();
    const BlochVector midpoint = 0.5 * (x_a + x_b);
    // The norm sum is minimized at the midpoint; any perturbation d can
    // add at most 4|d| to it.
    const double min_sum = (x_a + x_b).norm() + (x_a - x_b).norm();
    double radius = std::max(0.0, 0.5 * (1.0 - min_sum));

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const auto d = rng.in_ball(radius);
        const BlochVector x_pp = midpoint + BlochVector{d[0], d[1], d[2]};
        const auto v = ElementVectors::from_free(x_pp, x_a, x_b);
        if (v.norm_sum() <= 1.0 + kConstraintTol) {
            return povm_from_vectors(v, rng.simplex4());
        }
        // Shrink toward the midpoint so feasible magnitudes always
        // terminate well inside the retry budget.
        radius *= 0.9;
    }
    throw FeasibilityError(
        "no valid joint POVM with the requested marginal magnitudes "
        "(retry budget exhausted)");
}

JointPovm sample_valid_povm(const ObservablePair& obs, std::uint64_t seed,
                            std::optional<std::pair<double, double>>
                                magnitudes,
                            int max_retries) {
    Rng rng(seed);
    return sample_valid_povm(obs, rng, magnitudes, max_retries);
}

namespace {

// Slack on the norm-sum feasibility test. Keeps the search from ruling
// out exact-boundary configurations over an ulp; it inflates achieved
// accuracies by O(1e-12) at worst, below the reported 1e-9 guarantee.
constexpr double kFeasibleSlop = 1e-13;

// Largest b in [0, 1/2] such that the POVM with free vector x_pp and
// marginals (a*n_a, b*n_b) stays feasible. The norm sum is convex in b,
// so the feasible set is an interval and bisection applies. When even
// b = 0 is infeasible, returns the (negative) feasibility deficit so the
// outer search still sees a slope toward the feasible set.
double max_feasible_b(const BlochVector& x_pp, double a,
                      const ObservablePair& obs) {
    const BlochVector x_a = a * obs.n_a();
    const auto norm_sum = [&](double b) {
        return ElementVectors::from_free(x_pp, x_a, b * obs.n_b())
            .norm_sum();
    };
    const auto feasible = [&](double b) {
        return norm_sum(b) <= 1.0 + kFeasibleSlop;
    };
    if (!feasible(0.0)) {
        return 1.0 + kFeasibleSlop - norm_sum(0.0);
    }
    if (feasible(0.5)) {
        return 0.5;
    }
    double lo = 0.0;
    double hi = 0.5;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Nelder-Mead maximization of f over R^3. The frontier objective is
// concave and piecewise smooth (norm-sum kinks), which direct search
// handles without derivatives.
BlochVector nelder_mead(const std::function<double(const BlochVector&)>& f,
                        const BlochVector& start, double scale,
                        int max_iters) {
    struct Vertex {
        BlochVector p;
        double value;
    };
    std::array<Vertex, 4> simplex;
    simplex[0] = {start, f(start)};
    for (int k = 0; k < 3; ++k) {
        BlochVector p = start;
        (k == 0 ? p.x : k == 1 ? p.y : p.z) += scale;
        simplex[static_cast<std::size_t>(k + 1)] = {p, f(p)};
    }

    const auto by_value = [](const Vertex& u, const Vertex& v) {
        return u.value > v.value;
    };
    for (int iter = 0; iter < max_iters; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        const double spread = (simplex[0].p - simplex[3].p).norm();
        if (spread < 1e-11 &&
            std::abs(simplex[0].value - simplex[3].value) < 1e-13) {
            break;
        }
        const BlochVector centroid =
            (1.0 / 3.0) *
            (simplex[0].p + simplex[1].p + simplex[2].p);
        Vertex& worst = simplex[3];

        const BlochVector reflected = centroid + (centroid - worst.p);
        const double fr = f(reflected);
        if (fr > simplex[0].value) {
            const BlochVector expanded =
                centroid + 2.0 * (centroid - worst.p);
            const double fe = f(expanded);
            worst = fe > fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
            continue;
        }
        if (fr > simplex[2].value) {
            worst = {reflected, fr};
            continue;
        }
        const BlochVector contracted =
            centroid + 0.5 * (worst.p - centroid);
        const double fc = f(contracted);
        if (fc > worst.value) {
            worst = {contracted, fc};
            continue;
        }
        for (int k = 1; k < 4; ++k) {
            auto& v = simplex[static_cast<std::size_t>(k)];
            v.p = simplex[0].p + 0.5 * (v.p - simplex[0].p);
            v.value = f(v.p);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return simplex[0].p;
}

} // namespace

std::pair<double, JointPovm> frontier_max(const ObservablePair& obs,
                                          double x_a_target,
                                          std::uint64_t seed, int restarts) {
    if (!std::isfinite(x_a_target) || x_a_target < -kConstraintTol ||
        x_a_target > 1.0 + kConstraintTol) {
        throw ValidationError("accuracy must lie in [0, 1]");
    }
    x_a_target = std::clamp(x_a_target, 0.0, 1.0);
    const double a = 0.5 * std::sqrt(x_a_target);

    const auto objective = [&](const BlochVector& x_pp) {
        return max_feasible_b(x_pp, a, obs);
    };

    Rng rng(seed);
    double best_b = -1.0;
    BlochVector best_pp{};
    for (int restart = 0; restart < restarts; ++restart) {
        // Start near candidate midpoints (a*n_a + b0*n_b)/2 with a random
        // offset; the objective is concave so the starts mainly guard
        // against degenerate simplices. The first start sits at a*n_a/2,
        // which is feasible (with b = 0) for every target.
        const double b0 = restart == 0 ? 0.0 : 0.5 * rng.uniform();
        const auto d = rng.in_ball(restart == 0 ? 0.0 : 0.15);
        const BlochVector start = 0.5 * (a * obs.n_a() + b0 * obs.n_b()) +
                                  BlochVector{d[0], d[1], d[2]};
        const BlochVector x_pp = nelder_mead(objective, start, 0.08, 250);
        const double b = objective(x_pp);
        if (b > best_b) {
            best_b = b;
            best_pp = x_pp;
        }
    }
    if (best_b < 0.0) {
        throw FeasibilityError("frontier search found no feasible POVM");
    }
    best_b = std::max(0.0, best_b);
    const auto v = ElementVectors::from_free(best_pp, a * obs.n_a(),
                                             best_b * obs.n_b());
    const JointPovm witness =
        povm_from_vectors(v, {0.25, 0.25, 0.25, 0.25});
    return {4.0 * best_b * best_b, witness};
}

SweepResult region_sweep(const ObservablePair& obs, int grid_size,
                         std::uint64_t seed, bool keep_witnesses) {
    if (grid_size < 2) {
        throw ValidationError("grid size must be at least 2");
    }
    SweepResult result;
    result.theta = obs.theta();
    result.points.reserve(static_cast<std::size_t>(grid_size));
    for (int k = 0; k < grid_size; ++k) {
        const double x_a =
            static_cast<double>(k) / static_cast<double>(grid_size - 1);
        auto [x_b, witness] =
            frontier_max(obs, x_a, derive_seed(seed, static_cast<std::uint64_t>(k)));
        RegionPoint point;
        point.x_a = x_a;
        point.x_b = x_b;
        point.x_b_boundary = boundary_curve(obs.theta(), x_a);
        point.gap = point.x_b_boundary - point.x_b;
        if (keep_witnesses) {
            point.achieved_by = std::move(witness);
        }
        result.points.push_back(std::move(point));
    }
    return result;
}

} // namespace jointmeas
