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
 * Finite-sample Monte Carlo of simultaneous measurements and
 * maximum-likelihood reconstruction of the observables' distributions.
 *
 * A nonideal marginal maps the true distribution (p, 1-p) through its
 * transition matrix F, so the observed '+' frequency determines p by
 * inverting the affine map q(+) = F(+,+) p + F(+,-) (1 - p), clipped to
 * [0, 1]. The per-sample Fisher information X / (q(+) q(-)) sets the
 * asymptotic variance 1/(N I) of that estimator; the accuracy X is
 * exactly the information penalty relative to a projective measurement.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "jointmeas/bloch.hpp"
#include "jointmeas/channel.hpp"

namespace jointmeas {

/// Tallies of the four outcome pairs of a simultaneous measurement.
class OutcomeCounts {
  public:
    OutcomeCounts(std::uint64_t total, std::array<std::uint64_t, 4> counts);

    std::uint64_t total() const { return total_; }
    std::uint64_t count(Sign i, Sign j) const {
        return counts_[static_cast<std::size_t>(JointPovm::index(i, j))];
    }
    const std::array<std::uint64_t, 4>& counts() const { return counts_; }

    /// N_alpha(+): samples whose outcome for the observable was '+'.
    std::uint64_t marginal_plus(Observable which) const;
    std::uint64_t marginal_minus(Observable which) const {
        return total_ - marginal_plus(which);
    }

  private:
    std::uint64_t total_;
    std::array<std::uint64_t, 4> counts_;
};

/// Draws n independent outcome pairs from the POVM's distribution on the
/// state. Deterministic for a fixed seed.
OutcomeCounts simulate(const JointPovm& povm, const QubitState& state,
                       std::uint64_t n, std::uint64_t seed);

/// Log-likelihood sum_i N(i) ln q(i) of a candidate true '+' probability,
/// with the 0 ln 0 = 0 convention. A zero-probability outcome with a
/// positive count yields -infinity.
double log_likelihood(const NonidealChannel& channel, std::uint64_t n_plus,
                      std::uint64_t n_minus, double p_plus);

struct MleEstimate {
    /// Maximizer of the likelihood over [0, 1].
    double p_star = 0.0;
    /// The unconstrained inversion, before clipping.
    double raw = 0.0;
    bool clipped = false;
};

/// Closed-form maximum-likelihood estimate of the true '+' probability
/// from marginal counts. Requires a channel with positive accuracy.
MleEstimate mle_estimate(const NonidealChannel& channel, std::uint64_t n_plus,
                         std::uint64_t n_minus);

/// Per-sample Fisher information X / (q(+) q(-)) about the true '+'
/// probability. Throws EstimationError when the outcome distribution is
/// degenerate (q on the boundary).
double fisher_information(const NonidealChannel& channel, double p_plus);

/// Maximum-likelihood reconstruction of both observables from one set of
/// counts, with plug-in Fisher information at the estimates.
struct EstimationReport {
    std::uint64_t n = 0;
    double p_star_a = 0.0;
    double p_star_b = 0.0;
    /// Plug-in Fisher information; +infinity when q(p*) is degenerate.
    double fisher_a = 0.0;
    double fisher_b = 0.0;
    bool clipped_a = false;
    bool clipped_b = false;
};

EstimationReport estimate_marginals(const JointPovm& povm,
                                    const ObservablePair& obs,
                                    const OutcomeCounts& counts);

/// Monte Carlo check of MLE asymptotics for one observable.
struct ObservableStats {
    /// False when the marginal carries no information and was skipped.
    bool assessed = false;
    double true_p = 0.0;
    double fisher = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    /// variance * n_per_trial * fisher; approaches 1 as n grows.
    double ratio = 0.0;
    std::uint64_t clipped_trials = 0;
};

struct ExperimentReport {
    std::uint64_t n_per_trial = 0;
    std::uint64_t trials = 0;
    ObservableStats a;
    ObservableStats b;
};

/// Called after each trial with (trial index, p*_A, p*_B); an unassessed
/// observable reports NaN.
using TrialCallback =
    std::function<void(std::uint64_t, double, double)>;

/// Repeats simulate+estimate over independent trials and compares the
/// empirical estimator variance against the Fisher prediction. Trials
/// derive per-trial seeds from the master seed, so the report does not
/// depend on execution order.
ExperimentReport asymptotic_experiment(const JointPovm& povm,
                                       const ObservablePair& obs,
                                       const QubitState& state,
                                       std::uint64_t n_per_trial,
                                       std::uint64_t trials,
                                       std::uint64_t seed,
                                       const TrialCallback& on_trial = {});

/// Sample-splitting baseline: measure A projectively on a xi fraction of
/// the samples and B on the rest.
struct SplitStrategy {
    /// Effective per-sample accuracies (xi, 1 - xi): splitting scales the
    /// per-sample Fisher information of each observable by its share.
    double x_a = 0.0;
    double x_b = 0.0;
    /// The asymptotic four-outcome POVM, relabeled onto outcome pairs by
    /// assigning the unmeasured observable a fair coin.
    JointPovm povm;
};

SplitStrategy split_strategy(const ObservablePair& obs, double xi);

} // namespace jointmeas
