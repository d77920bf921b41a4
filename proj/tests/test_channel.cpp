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

#include "jointmeas/channel.hpp"
#include "jointmeas/optimal.hpp"
#include "support.hpp"

using namespace jointmeas;
using namespace jointmeas::testing;

TEST_CASE("nonideality detection") {
    const ObservablePair obs({0, 0, 1}, {1, 0, 0});

    SUBCASE("optimal POVM conforms for both observables") {
        const NonidealityReport report =
            check_nonideal(optimal_povm(obs), obs);
        CHECK(report.a.conforming);
        CHECK(report.b.conforming);
        CHECK_FALSE(report.a.uninformative);
        CHECK_FALSE(report.b.uninformative);
    }

    SUBCASE("a tilted marginal is flagged with its deviation") {
        const ObservablePair tilted(
            {std::sin(0.1), 0.0, std::cos(0.1)}, {1, 0, 0});
        const NonidealityReport report =
            check_nonideal(optimal_povm(tilted), obs);
        CHECK_FALSE(report.a.conforming);
        CHECK(report.a.deviation == doctest::Approx(0.1).epsilon(1e-9));
        CHECK(report.b.conforming);
    }

    SUBCASE("identity-proportional POVM conforms but is uninformative") {
        const PovmElement quarter(0.25, {0, 0, 0});
        const JointPovm povm({quarter, quarter, quarter, quarter});
        const NonidealityReport report = check_nonideal(povm, obs);
        CHECK(report.a.conforming);
        CHECK(report.a.uninformative);
        CHECK(report.b.conforming);
        CHECK(report.b.uninformative);
    }
}

TEST_CASE("transition matrices") {
    const BlochVector axis{0, 0, 1};

    SUBCASE("projective marginal gives the identity channel") {
        const NonidealChannel channel =
            channel_from_marginal(PovmElement(0.5, 0.5 * axis), axis);
        CHECK(channel.f(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(channel.f(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(channel.f(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(channel.f(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(accuracy(channel) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(classify_marginal(channel) == MarginalKind::Projective);
    }

    SUBCASE("vanishing x gives the fully depolarizing channel") {
        const NonidealChannel channel =
            channel_from_marginal(PovmElement(0.5, {0, 0, 0}), axis);
        for (int row = 0; row < 2; ++row) {
            for (int col = 0; col < 2; ++col) {
                CHECK(channel.f(row, col) == 0.5);
            }
        }
        CHECK(accuracy(channel) == 0.0);
        CHECK(classify_marginal(channel) == MarginalKind::Uninformative);
        CHECK(channel.orientation() == 1);
    }

    SUBCASE("intermediate smearing") {
        const NonidealChannel channel =
            channel_from_marginal(PovmElement(0.5, 0.3 * axis), axis);
        CHECK(channel.f(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(channel.f(0, 1) == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(channel.f(1, 0) == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(channel.f(1, 1) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(channel.det() == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(accuracy(channel) == doctest::Approx(0.36).epsilon(1e-14));
        CHECK(classify_marginal(channel) == MarginalKind::Intermediate);
    }

    SUBCASE("antiparallel x flips orientation but not accuracy") {
        const NonidealChannel channel =
            channel_from_marginal(PovmElement(0.5, -0.3 * axis), axis);
        CHECK(channel.orientation() == -1);
        CHECK(channel.det() == doctest::Approx(-0.6).epsilon(1e-15));
        CHECK(accuracy(channel) == doctest::Approx(0.36).epsilon(1e-14));
    }

    SUBCASE("nonconforming marginal is rejected with the deviation") {
        const BlochVector x = 0.3 * BlochVector{std::sin(0.2), 0, std::cos(0.2)};
        try {
            channel_from_marginal(PovmElement(0.5, x), axis);
            FAIL("expected NonidealityError");
        } catch (const NonidealityError& e) {
            CHECK(e.deviation() == doctest::Approx(0.2).epsilon(1e-9));
        }
    }
}

TEST_CASE("channel reproduces marginal statistics on every state") {
    // The smearing identity q(i) = sum_j F(i,j) p(j), with p from the
    // projective measurement, must hold as a functional identity.
    Rng rng(21);
    for (int k = 0; k < 2000; ++k) {
        const ObservablePair obs = random_observables(rng);
        const JointPovm povm = sample_valid_povm(obs, rng);
        for (const Observable which : {Observable::A, Observable::B}) {
            const NonidealChannel channel = build_channel(povm, obs, which);
            const PovmElement marginal = povm.marginal(which);
            for (int s = 0; s < 50; ++s) {
                const QubitState state = random_state(rng);
                const double p_plus = projector_probability(
                    state, obs.axis(which), Sign::Plus);
                const double smeared = channel.f(0, 0) * p_plus +
                                       channel.f(0, 1) * (1.0 - p_plus);
                REQUIRE(std::abs(smeared -
                                 outcome_probability(state, marginal)) <=
                        1e-12);
            }
        }
    }
}

TEST_CASE("accuracy equals 4|x|^2 of the marginal") {
    Rng rng(22);
    for (int k = 0; k < 5000; ++k) {
        const ObservablePair obs = random_observables(rng);
        const JointPovm povm = sample_valid_povm(obs, rng);
        for (const Observable which : {Observable::A, Observable::B}) {
            const double xn = povm.marginal(which).x().norm();
            REQUIRE(std::abs(accuracy(build_channel(povm, obs, which)) -
                             4.0 * xn * xn) <= 1e-12);
        }
    }
}

TEST_CASE("error parameter") {
    CHECK(error_param(1.0) == 0.0);
    CHECK(error_param(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(error_param(2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::isinf(error_param(0.0)));
    CHECK_THROWS_AS(error_param(1.5), ValidationError);
    CHECK_THROWS_AS(error_param(-0.1), ValidationError);
}

TEST_CASE("trade-off verdicts") {
    SUBCASE("projective A forces uninformative B") {
        const TradeoffVerdict v =
            tradeoff_check(AccuracyPair(1.0, 0.0, 1.0));
        CHECK(v.satisfied);
        CHECK(v.slack == doctest::Approx(0.0).epsilon(1e-15));
    }

    SUBCASE("optimal accuracies saturate the bound") {
        const TradeoffVerdict v = tradeoff_check(
            AccuracyPair(2.0 / 3.0, 2.0 / 3.0, M_PI / 6.0));
        CHECK(v.satisfied);
        CHECK(std::abs(v.slack) <= 1e-12);
    }

    SUBCASE("double-projective measurement is impossible") {
        const TradeoffVerdict v =
            tradeoff_check(AccuracyPair(1.0, 1.0, M_PI / 3.0));
        CHECK_FALSE(v.satisfied);
        CHECK(-v.slack == doctest::Approx(0.75).epsilon(1e-12));
    }
}

TEST_CASE("error-product verdicts") {
    SUBCASE("orthogonal optimum saturates with equality") {
        // X = 1/2 each makes both error parameters 1.
        const ErrorProductVerdict v =
            error_product_check(AccuracyPair(0.5, 0.5, M_PI / 2.0));
        CHECK(v.satisfied);
        CHECK(v.product == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(v.bound == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("loose errors satisfy easily") {
        const ErrorProductVerdict v = error_product_check(
            AccuracyPair(1.0 / 3.0, 0.5, M_PI / 6.0));
        CHECK(v.satisfied);
        CHECK(v.product == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(v.bound == doctest::Approx(0.25).epsilon(1e-14));
    }

    SUBCASE("small errors violate") {
        const double x = 1.0 / 1.1; // error parameter 0.1
        const ErrorProductVerdict v =
            error_product_check(AccuracyPair(x, x, M_PI / 2.0));
        CHECK_FALSE(v.satisfied);
        CHECK(v.product == doctest::Approx(0.01).epsilon(1e-10));
    }

    SUBCASE("zero accuracy satisfies vacuously") {
        const ErrorProductVerdict v =
            error_product_check(AccuracyPair(0.0, 1.0, M_PI / 2.0));
        CHECK(v.satisfied);
        CHECK(v.trivial);
        CHECK(std::isinf(v.product));
    }
}

TEST_CASE("both trade-off forms agree") {
    Rng rng(23);
    for (int k = 0; k < 20000; ++k) {
        // Arbitrary pairs, including infeasible ones past the bound.
        const AccuracyPair pair(rng.uniform(), rng.uniform(),
                                rng.uniform(0.01, M_PI - 0.01));
        if (pair.x_a() == 0.0 || pair.x_b() == 0.0) {
            continue;
        }
        REQUIRE(tradeoff_check(pair).satisfied ==
                error_product_check(pair).satisfied);
    }
}

TEST_CASE("sampled POVMs respect the trade-off and the norm bound") {
    Rng rng(24);
    for (int k = 0; k < 20000; ++k) {
        const ObservablePair obs = random_observables(rng);
        const JointPovm povm = sample_valid_povm(obs, rng);
        const AccuracyPair pair(
            accuracy(build_channel(povm, obs, Observable::A)),
            accuracy(build_channel(povm, obs, Observable::B)), obs.theta());
        REQUIRE(tradeoff_check(pair).satisfied);
        // No valid joint measurement reaches double-projective accuracy.
        REQUIRE(pair.x_a() + pair.x_b() < 2.0 - 1e-6);
    }
}

TEST_CASE("norm-sum inequality holds for arbitrary valid POVMs") {
    // |x_A + x_B| + |x_A - x_B| <= 1 follows from positivity and
    // completeness alone; no alignment assumption is needed.
    Rng rng(25);
    for (int k = 0; k < 20000; ++k) {
        const JointPovm povm = random_general_povm(rng);
        const auto [a, b] = marginals(povm);
        const double sum =
            (a.x() + b.x()).norm() + (a.x() - b.x()).norm();
        REQUIRE(sum <= 1.0 + 1e-12);
    }
}
