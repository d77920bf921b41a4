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

#include "jointmeas/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "jointmeas/rng.hpp"

namespace jointmeas {

OutcomeCounts::OutcomeCounts(std::uint64_t total,
                             std::array<std::uint64_t, 4> counts)
    : total_(total), counts_(counts) {
    std::uint64_t sum = 0;
    for (const auto c : counts_) {
        sum += c;
    }
    if (sum != total) {
        throw ValidationError("outcome counts must sum to the total");
    }
}

std::uint64_t OutcomeCounts::marginal_plus(Observable which) const {
    return which == Observable::A ? counts_[0] + counts_[1]
                                  : counts_[0] + counts_[2];
}

OutcomeCounts simulate(const JointPovm& povm, const QubitState& state,
                       std::uint64_t n, std::uint64_t seed) {
    if (n == 0) {
        throw ValidationError("sample count must be at least 1");
    }
    std::array<double, 4> cumulative{};
    double acc = 0.0;
    for (int k = 0; k < JointPovm::kElements; ++k) {
        acc += outcome_probability(state,
                                   povm.elements()[static_cast<std::size_t>(k)]);
        cumulative[static_cast<std::size_t>(k)] = acc;
    }
    cumulative[3] = 1.0;

    Rng rng(seed);
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t s = 0; s < n; ++s) {
        const double u = rng.uniform();
        int k = 0;
        while (k < 3 && u >= cumulative[static_cast<std::size_t>(k)]) {
            ++k;
        }
        ++counts[static_cast<std::size_t>(k)];
    }
    return OutcomeCounts(n, counts);
}

double log_likelihood(const NonidealChannel& channel, std::uint64_t n_plus,
                      std::uint64_t n_minus, double p_plus) {
    if (!std::isfinite(p_plus) || p_plus < 0.0 || p_plus > 1.0) {
        throw ValidationError("candidate probability must lie in [0, 1]");
    }
    const double q_plus =
        channel.f(0, 0) * p_plus + channel.f(0, 1) * (1.0 - p_plus);
    const double q_minus =
        channel.f(1, 0) * p_plus + channel.f(1, 1) * (1.0 - p_plus);
    double value = 0.0;
    for (const auto& [count, q] :
         {std::pair{n_plus, q_plus}, std::pair{n_minus, q_minus}}) {
        if (count == 0) {
            continue; // 0 ln 0 := 0
        }
        if (q <= 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        value += static_cast<double>(count) * std::log(q);
    }
    return value;
}

MleEstimate mle_estimate(const NonidealChannel& channel, std::uint64_t n_plus,
                         std::uint64_t n_minus) {
    const std::uint64_t n = n_plus + n_minus;
    if (n == 0) {
        throw EstimationError("cannot estimate from zero samples");
    }
    const double slope = channel.f(0, 0) - channel.f(0, 1); // = det F
    if (slope == 0.0) {
        throw EstimationError(
            "channel carries no information (accuracy is zero)");
    }
    // The likelihood is concave in q(+), and q(+) is affine in p, so the
    // constrained maximizer is the clipped inversion of the empirical
    // frequency.
    const double freq =
        static_cast<double>(n_plus) / static_cast<double>(n);
    MleEstimate est;
    est.raw = (freq - channel.f(0, 1)) / slope;
    est.p_star = std::clamp(est.raw, 0.0, 1.0);
    est.clipped = est.raw != est.p_star;
    return est;
}

double fisher_information(const NonidealChannel& channel, double p_plus) {
    if (!std::isfinite(p_plus) || p_plus < 0.0 || p_plus > 1.0) {
        throw ValidationError("probability must lie in [0, 1]");
    }
    const double q_plus =
        channel.f(0, 0) * p_plus + channel.f(0, 1) * (1.0 - p_plus);
    if (q_plus <= 0.0 || q_plus >= 1.0) {
        throw EstimationError(
            "Fisher information is singular at a degenerate outcome "
            "distribution");
    }
    const double det = channel.det();
    return det * det / (q_plus * (1.0 - q_plus));
}

namespace {

double plug_in_fisher(const NonidealChannel& channel, double p_star) {
    const double q_plus =
        channel.f(0, 0) * p_star + channel.f(0, 1) * (1.0 - p_star);
    if (q_plus <= 0.0 || q_plus >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double det = channel.det();
    return det * det / (q_plus * (1.0 - q_plus));
}

} // namespace

EstimationReport estimate_marginals(const JointPovm& povm,
                                    const ObservablePair& obs,
                                    const OutcomeCounts& counts) {
    EstimationReport report;
    report.n = counts.total();
    for (const Observable which : {Observable::A, Observable::B}) {
        const NonidealChannel channel = build_channel(povm, obs, which);
        const MleEstimate est = mle_estimate(
            channel, counts.marginal_plus(which), counts.marginal_minus(which));
        const double fisher = plug_in_fisher(channel, est.p_star);
        if (which == Observable::A) {
            report.p_star_a = est.p_star;
            report.clipped_a = est.clipped;
            report.fisher_a = fisher;
        } else {
            report.p_star_b = est.p_star;
            report.clipped_b = est.clipped;
            report.fisher_b = fisher;
        }
    }
    return report;
}

ExperimentReport asymptotic_experiment(const JointPovm& povm,
                                       const ObservablePair& obs,
                                       const QubitState& state,
                                       std::uint64_t n_per_trial,
                                       std::uint64_t trials,
                                       std::uint64_t seed,
                                       const TrialCallback& on_trial) {
    if (n_per_trial == 0) {
        throw ValidationError("samples per trial must be at least 1");
    }
    if (trials < 2) {
        throw ValidationError("need at least 2 trials to estimate variance");
    }

    struct Tracked {
        std::optional<NonidealChannel> channel;
        double true_p = 0.0;
        double fisher = 0.0;
        double sum = 0.0;
        double sum_sq = 0.0;
        std::uint64_t clipped = 0;

        bool assessed() const { return channel.has_value(); }
    };
    std::array<Tracked, 2> tracked;

    for (const Observable which : {Observable::A, Observable::B}) {
        auto& t = tracked[static_cast<std::size_t>(which)];
        const NonidealChannel channel = build_channel(povm, obs, which);
        if (accuracy(channel) == 0.0) {
            continue; // nothing to estimate for this observable
        }
        const double p =
            projector_probability(state, obs.axis(which), Sign::Plus);
        if (p < kConstraintTol || p > 1.0 - kConstraintTol) {
            throw EstimationError(
                "asymptotic normality fails at a degenerate true "
                "distribution (p in {0, 1})");
        }
        t.channel = channel;
        t.true_p = p;
        t.fisher = fisher_information(channel, p);
    }
    if (!tracked[0].assessed() && !tracked[1].assessed()) {
        throw EstimationError(
            "both marginals carry no information (accuracy is zero)");
    }

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const OutcomeCounts counts =
            simulate(povm, state, n_per_trial, derive_seed(seed, trial));
        std::array<double, 2> p_star = {
            std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::quiet_NaN()};
        for (const Observable which : {Observable::A, Observable::B}) {
            auto& t = tracked[static_cast<std::size_t>(which)];
            if (!t.assessed()) {
                continue;
            }
            const MleEstimate est =
                mle_estimate(*t.channel, counts.marginal_plus(which),
                             counts.marginal_minus(which));
            t.sum += est.p_star;
            t.sum_sq += est.p_star * est.p_star;
            t.clipped += est.clipped ? 1 : 0;
            p_star[static_cast<std::size_t>(which)] = est.p_star;
        }
        if (on_trial) {
            on_trial(trial, p_star[0], p_star[1]);
        }
    }

    ExperimentReport report;
    report.n_per_trial = n_per_trial;
    report.trials = trials;
    for (const Observable which : {Observable::A, Observable::B}) {
        const auto& t = tracked[static_cast<std::size_t>(which)];
        ObservableStats stats;
        stats.assessed = t.assessed();
        if (t.assessed()) {
            const double n_trials = static_cast<double>(trials);
            const double mean = t.sum / n_trials;
            stats.true_p = t.true_p;
            stats.fisher = t.fisher;
            stats.mean = mean;
            stats.variance = std::max(
                0.0, (t.sum_sq - n_trials * mean * mean) / (n_trials - 1.0));
            stats.ratio = stats.variance *
                          static_cast<double>(n_per_trial) * t.fisher;
            stats.clipped_trials = t.clipped;
        }
        (which == Observable::A ? report.a : report.b) = stats;
    }
    return report;
}

SplitStrategy split_strategy(const ObservablePair& obs, double xi) {
    if (!std::isfinite(xi) || xi <= 0.0 || xi >= 1.0) {
        throw ValidationError("split ratio must lie strictly between 0 and 1");
    }
    // Element (i, j) = xi P_A(i)/2 + (1 - xi) P_B(j)/2: the group that
    // measured A reports a coin flip for B and vice versa.
    std::array<PovmElement, 4> elements = {
        PovmElement(0.25, 0.25 * (xi * obs.n_a() + (1.0 - xi) * obs.n_b())),
        PovmElement(0.25, 0.25 * (xi * obs.n_a() - (1.0 - xi) * obs.n_b())),
        PovmElement(0.25, 0.25 * (-(xi * obs.n_a()) + (1.0 - xi) * obs.n_b())),
        PovmElement(0.25, 0.25 * (-(xi * obs.n_a()) - (1.0 - xi) * obs.n_b())),
    };
    return SplitStrategy{xi, 1.0 - xi, JointPovm(elements)};
}

} // namespace jointmeas
