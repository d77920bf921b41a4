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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "jointmeas/optimal.hpp"
#include "jointmeas/simulate.hpp"
#include "support.hpp"

using namespace jointmeas;
using namespace jointmeas::testing;

namespace {

NonidealChannel make_channel(double r, double x_signed) {
    const BlochVector axis{0, 0, 1};
    return channel_from_marginal(PovmElement(r, x_signed * axis), axis);
}

NonidealChannel random_informative_channel(Rng& rng) {
    const double xn = rng.uniform(0.05, 0.45);
    const double r = rng.uniform(xn, 1.0 - xn);
    return make_channel(r, rng.uniform() < 0.5 ? xn : -xn);
}

// Expected per-sample log-likelihood of candidate p at true distribution
// p_true; its negative curvature at p_true is the Fisher information.
double expected_log_likelihood(const NonidealChannel& channel, double p_true,
                               double p) {
    const auto q = [&](int row, double pp) {
        return channel.f(row, 0) * pp + channel.f(row, 1) * (1.0 - pp);
    };
    return q(0, p_true) * std::log(q(0, p)) +
           q(1, p_true) * std::log(q(1, p));
}

} // namespace

TEST_CASE("simulation draws") {
    SUBCASE("zero samples are rejected") {
        const PovmElement quarter(0.25, {0, 0, 0});
        const JointPovm povm({quarter, quarter, quarter, quarter});
        CHECK_THROWS_AS(simulate(povm, QubitState::maximally_mixed(), 0, 1),
                        ValidationError);
    }

    SUBCASE("deterministic under a fixed seed") {
        Rng rng(51);
        const ObservablePair obs = random_observables(rng);
        const JointPovm povm = sample_valid_povm(obs, rng);
        const QubitState state = random_state(rng);
        const OutcomeCounts first = simulate(povm, state, 10000, 99);
        const OutcomeCounts second = simulate(povm, state, 10000, 99);
        CHECK(first.counts() == second.counts());
    }

    SUBCASE("eigenstate of a projective marginal always fires '+'") {
        const ObservablePair obs({0, 0, 1}, {1, 0, 0});
        const JointPovm povm =
            sample_valid_povm(obs, 52, std::pair{0.5, 0.0});
        const OutcomeCounts counts =
            simulate(povm, QubitState({0, 0, 1}), 5000, 53);
        CHECK(counts.marginal_plus(Observable::A) == 5000);
    }

    SUBCASE("uniform POVM passes a chi-square test") {
        const PovmElement quarter(0.25, {0, 0, 0});
        const JointPovm povm({quarter, quarter, quarter, quarter});
        const OutcomeCounts counts =
            simulate(povm, QubitState({0.3, -0.1, 0.4}), 100000, 54);
        const double expected = 100000.0 / 4.0;
        double chi_square = 0.0;
        for (const auto c : counts.counts()) {
            const double diff = static_cast<double>(c) - expected;
            chi_square += diff * diff / expected;
        }
        // chi-square quantile at significance 1e-6 with 3 degrees of
        // freedom.
        CHECK(chi_square < 30.66484970615427);
    }

    SUBCASE("marginal counts partition the total") {
        Rng rng(55);
        const ObservablePair obs = random_observables(rng);
        const JointPovm povm = sample_valid_povm(obs, rng);
        const OutcomeCounts counts =
            simulate(povm, random_state(rng), 777, 56);
        for (const Observable which : {Observable::A, Observable::B}) {
            CHECK(counts.marginal_plus(which) +
                      counts.marginal_minus(which) ==
                  counts.total());
        }
    }
}

TEST_CASE("log-likelihood") {
    SUBCASE("identity channel, small counts") {
        const NonidealChannel identity = make_channel(0.5, 0.5);
        CHECK(log_likelihood(identity, 6, 4, 0.6) ==
              doctest::Approx(6.0 * std::log(0.6) + 4.0 * std::log(0.4))
                  .epsilon(1e-15));
        CHECK(log_likelihood(identity, 6, 4, 0.6) ==
              doctest::Approx(-6.730116670092564).epsilon(1e-12));
    }

    SUBCASE("no samples, no evidence") {
        CHECK(log_likelihood(make_channel(0.5, 0.3), 0, 0, 0.7) == 0.0);
    }

    SUBCASE("zero-probability outcome with support is minus infinity") {
        const NonidealChannel identity = make_channel(0.5, 0.5);
        CHECK(std::isinf(log_likelihood(identity, 6, 4, 1.0)));
        CHECK(log_likelihood(identity, 6, 0, 1.0) == 0.0);
    }

    SUBCASE("depolarizing channel is flat in p") {
        const NonidealChannel flat = make_channel(0.5, 0.0);
        const double at_zero = log_likelihood(flat, 30, 70, 0.0);
        for (const double p : {0.1, 0.5, 0.9, 1.0}) {
            CHECK(log_likelihood(flat, 30, 70, p) == at_zero);
        }
    }
}

TEST_CASE("maximum-likelihood estimation") {
    SUBCASE("closed-form inversion") {
        const NonidealChannel channel = make_channel(0.5, 0.3);
        const MleEstimate est = mle_estimate(channel, 600, 400);
        CHECK(est.p_star == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        CHECK_FALSE(est.clipped);
    }

    SUBCASE("clipping at the simplex boundary") {
        const NonidealChannel channel = make_channel(0.5, 0.3);
        const MleEstimate est = mle_estimate(channel, 950, 50);
        CHECK(est.p_star == 1.0);
        CHECK(est.clipped);
        CHECK(est.raw == doctest::Approx(1.25).epsilon(1e-13));
    }

    SUBCASE("identity channel returns the empirical frequency") {
        const MleEstimate est = mle_estimate(make_channel(0.5, 0.5), 700, 300);
        CHECK(est.p_star == doctest::Approx(0.7).epsilon(1e-15));
    }

    SUBCASE("uninformative channel is rejected") {
        CHECK_THROWS_AS(mle_estimate(make_channel(0.5, 0.0), 10, 10),
                        EstimationError);
        CHECK_THROWS_AS(mle_estimate(make_channel(0.5, 0.3), 0, 0),
                        EstimationError);
    }

    SUBCASE("matches a dense likelihood grid, clipped cases included") {
        Rng rng(61);
        const int grid_points = 10001;
        for (int k = 0; k < 500; ++k) {
            const NonidealChannel channel = random_informative_channel(rng);
            const std::uint64_t n = 1 + rng.below(2000);
            const std::uint64_t n_plus = rng.below(n + 1);
            const MleEstimate est = mle_estimate(channel, n_plus, n - n_plus);

            double best_p = 0.0;
            double best_value = -std::numeric_limits<double>::infinity();
            for (int g = 0; g < grid_points; ++g) {
                const double p =
                    static_cast<double>(g) / (grid_points - 1);
                const double value =
                    log_likelihood(channel, n_plus, n - n_plus, p);
                if (value > best_value) {
                    best_value = value;
                    best_p = p;
                }
            }
            REQUIRE(std::abs(est.p_star - best_p) <=
                    1.0 / (grid_points - 1) + 1e-12);
        }
    }
}

TEST_CASE("Fisher information") {
    SUBCASE("known values") {
        const NonidealChannel channel = make_channel(0.5, 0.3);
        CHECK(fisher_information(channel, 0.5) ==
              doctest::Approx(1.44).epsilon(1e-13));
        const NonidealChannel projective = make_channel(0.5, 0.5);
        CHECK(fisher_information(projective, 0.5) ==
              doctest::Approx(4.0).epsilon(1e-13));
        const NonidealChannel flat = make_channel(0.5, 0.0);
        CHECK(fisher_information(flat, 0.3) == 0.0);
    }

    SUBCASE("degenerate outcome distribution is singular") {
        const NonidealChannel projective = make_channel(0.5, 0.5);
        CHECK_THROWS_AS(fisher_information(projective, 0.0),
                        EstimationError);
        CHECK_THROWS_AS(fisher_information(projective, 1.0),
                        EstimationError);
    }

    SUBCASE("equals the accuracy-scaled projective information") {
        Rng rng(62);
        for (int k = 0; k < 1000; ++k) {
            const NonidealChannel channel = random_informative_channel(rng);
            const double p = rng.uniform(0.05, 0.95);
            const double q =
                channel.f(0, 0) * p + channel.f(0, 1) * (1.0 - p);
            const double projective_at_q = 1.0 / (q * (1.0 - q));
            const double det = channel.det();
            REQUIRE(fisher_information(channel, p) ==
                    doctest::Approx(det * det * projective_at_q)
                        .epsilon(1e-12));
        }
    }

    SUBCASE("matches finite-difference curvature") {
        Rng rng(63);
        const double step = 1e-5;
        for (int k = 0; k < 1000; ++k) {
            const NonidealChannel channel = random_informative_channel(rng);
            const double p = rng.uniform(0.1, 0.9);
            const double curvature =
                -(expected_log_likelihood(channel, p, p + step) -
                  2.0 * expected_log_likelihood(channel, p, p) +
                  expected_log_likelihood(channel, p, p - step)) /
                (step * step);
            const double exact = fisher_information(channel, p);
            REQUIRE(std::abs(curvature - exact) <= 1e-4 * exact);
        }
    }
}

TEST_CASE("asymptotic experiment") {
    const ObservablePair obs({0, 0, 1}, {1, 0, 0});

    SUBCASE("variance tracks the Fisher prediction") {
        const JointPovm povm = optimal_povm(obs);
        const QubitState state({0.4, 0.0, 0.4});
        const ExperimentReport report =
            asymptotic_experiment(povm, obs, state, 4000, 300, 71);
        REQUIRE(report.a.assessed);
        REQUIRE(report.b.assessed);
        // Loose window for the small smoke sizes; the acceptance suite
        // runs the full-size gate.
        CHECK(report.a.ratio > 0.75);
        CHECK(report.a.ratio < 1.25);
        CHECK(report.b.ratio > 0.75);
        CHECK(report.b.ratio < 1.25);
        CHECK(std::abs(report.a.mean - report.a.true_p) < 0.01);
        CHECK(std::abs(report.b.mean - report.b.true_p) < 0.01);
    }

    SUBCASE("binomial sanity: projective A with coin-flip B") {
        const JointPovm povm =
            sample_valid_povm(obs, 72, std::pair{0.5, 0.0});
        const QubitState state({0, 0, 0.4});
        const ExperimentReport report =
            asymptotic_experiment(povm, obs, state, 4000, 300, 73);
        REQUIRE(report.a.assessed);
        CHECK_FALSE(report.b.assessed);
        CHECK(report.a.fisher ==
              doctest::Approx(1.0 / (0.7 * 0.3)).epsilon(1e-12));
        CHECK(report.a.ratio > 0.75);
        CHECK(report.a.ratio < 1.25);
    }

    SUBCASE("degenerate true distribution is rejected") {
        const JointPovm povm = optimal_povm(obs);
        CHECK_THROWS_AS(
            asymptotic_experiment(povm, obs, QubitState({0, 0, 1}), 100, 10,
                                  74),
            EstimationError);
    }

    SUBCASE("per-trial callback sees every trial") {
        const JointPovm povm = optimal_povm(obs);
        const QubitState state({0.3, 0.0, 0.3});
        std::uint64_t calls = 0;
        asymptotic_experiment(povm, obs, state, 100, 25, 75,
                              [&](std::uint64_t trial, double, double) {
                                  CHECK(trial == calls);
                                  ++calls;
                              });
        CHECK(calls == 25);
    }
}

TEST_CASE("sample splitting") {
    const double theta = M_PI / 6.0;
    const ObservablePair obs({0, 0, 1},
                             {std::sin(theta), 0, std::cos(theta)});

    SUBCASE("effective accuracies and the domain-P ceiling") {
        const SplitStrategy even = split_strategy(obs, 0.5);
        CHECK(even.x_a == 0.5);
        CHECK(even.x_b == 0.5);
        CHECK(even.x_a + even.x_b <= 1.0 + 1e-15);

        const SplitStrategy lopsided = split_strategy(obs, 0.999);
        CHECK(lopsided.x_b == doctest::Approx(0.001).epsilon(1e-10));
    }

    SUBCASE("relabeled POVM is valid and conforming") {
        const SplitStrategy split = split_strategy(obs, 0.3);
        const NonidealityReport report = check_nonideal(split.povm, obs);
        CHECK(report.a.conforming);
        CHECK(report.b.conforming);
        // Merging the four outcomes into pairs squares the share.
        CHECK(accuracy(build_channel(split.povm, obs, Observable::A)) ==
              doctest::Approx(0.09).epsilon(1e-12));
        CHECK(accuracy(build_channel(split.povm, obs, Observable::B)) ==
              doctest::Approx(0.49).epsilon(1e-12));
    }

    SUBCASE("simultaneous measurement beats every split at narrow angles") {
        const JointPovm best = optimal_povm(obs);
        const double x_a = accuracy(build_channel(best, obs, Observable::A));
        const double x_b = accuracy(build_channel(best, obs, Observable::B));
        CHECK(x_a + x_b > 1.0 + 0.1); // 2/3 + 2/3
        for (const double xi : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            const SplitStrategy split = split_strategy(obs, xi);
            CHECK(split.x_a + split.x_b <= 1.0 + 1e-15);
        }
    }

    SUBCASE("ratio outside (0, 1) is rejected") {
        CHECK_THROWS_AS(split_strategy(obs, 0.0), ValidationError);
        CHECK_THROWS_AS(split_strategy(obs, 1.0), ValidationError);
        CHECK_THROWS_AS(split_strategy(obs, -0.2), ValidationError);
    }
}
