// Copyright 2026 The eigenmark Authors
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
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "dense_oracle.hpp"
#include "test_util.hpp"

#include "eigenmark/error.hpp"
#include "eigenmark/grover.hpp"

using namespace eigenmark;
using testutil::max_diff;
using testutil::random_state;

namespace {

double closed_winner_probability(std::uint64_t N, std::size_t j) {
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
    return s * s;
}

// The ancilla stays |1>, so |x, 1> carries the whole input amplitude.
double input_amplitude(const GroverRun &run, std::uint32_t x) {
    return std::abs(run.final_state[(std::size_t{x} << 1) | 1U]);
}

} // namespace

TEST_CASE("winner scenario basics") {
    const WinnerScenario s(2, {3, 1, 1});
    CHECK(s.winners() == std::vector<std::uint32_t>{1, 3});
    CHECK(s.winner_labels() == std::vector<std::string>{"01", "11"});
    CHECK(s.bitmask() == 0b1010);
    CHECK(s.winning_fraction(2) == doctest::Approx(2.0 / 16.0));
    CHECK(WinnerScenario::from_labels(2, {"11", "01"}) == s);
    CHECK(WinnerScenario::from_bitmask(2, 0b1010) == s);
    CHECK_THROWS_AS(WinnerScenario(2, {4}), SizeError);
    CHECK_THROWS_AS(WinnerScenario::from_labels(2, {"011"}), SizeError);
}

TEST_CASE("oracle examples") {
    const QubitLayout layout = QubitLayout::standard(0, 2);
    const StateVector s = StateVector::from_amplitudes(
        {0, 0.5, 0, 0.5, 0, 0.5, 0, 0.5});
    const StateVector r =
        build_oracle(WinnerScenario(2, {1}), layout, std::numbers::pi)(s);
    const std::vector<Complex> expect = {0, 0.5, 0, -0.5, 0, 0.5, 0, 0.5};
    CHECK(max_diff(r.amplitudes(), expect) < 1e-15);

    const StateVector rnd = random_state(3, 5);
    CHECK(max_diff(build_oracle(WinnerScenario(2, {}), layout, 1.2)(rnd), rnd) == 0.0);

    const StateVector all =
        build_oracle(WinnerScenario(2, {0, 1, 2, 3}), layout, std::numbers::pi)(rnd);
    for (std::size_t i = 0; i < 8; ++i) {
        const Complex e = (i & 1U) != 0 ? -rnd[i] : rnd[i];
        CHECK(std::abs(all[i] - e) < 1e-15);
    }

    CHECK_THROWS_AS(build_oracle(WinnerScenario(3, {1}), layout, 1.0), SizeError);
    CHECK_THROWS_AS(build_oracle(WinnerScenario(2, {1}), layout, 7.0), Error);
}

TEST_CASE("grover iteration examples") {
    const QubitLayout layout = QubitLayout::standard(0, 2);
    StateVector s = apply_gate(ground_state(3), Gate2x2::pauli_x(), 0);
    const Qubit inputs[] = {1, 2};
    s = apply_hadamard_all(std::move(s), inputs);
    const std::vector<Complex> step2 = {0, 0.5, 0, 0.5, 0, 0.5, 0, 0.5};
    CHECK(max_diff(s.amplitudes(), step2) < 1e-15);
    const Oracle o = build_oracle(WinnerScenario(2, {1}), layout, std::numbers::pi);
    const StateVector r = grover_iteration(s, o, layout);
    const auto reported = marginal_over_reported(probabilities(r), layout);
    CHECK(reported[1] == doctest::Approx(1.0).epsilon(1e-12));

    const Oracle none = build_oracle(WinnerScenario(2, {}), layout, std::numbers::pi);
    CHECK(max_diff(grover_iteration(s, none, layout), s) < 1e-15);

    const GroverRun n3 = run_original_grover(WinnerScenario(3, {5}), 2);
    CHECK(n3.reported[5] == doctest::Approx(0.9453125).epsilon(1e-9));
    CHECK(n3.reported[5] == doctest::Approx(closed_winner_probability(8, 2)).epsilon(1e-12));
}

TEST_CASE("iteration count") {
    CHECK(optimal_iterations_argmin(4) == 1);
    CHECK(optimal_iterations_argmin(1024) == 25);
    // N = 2: j = 0 and j = 1 both leave cos^2 = 1/2; the smaller wins.
    CHECK(optimal_iterations_argmin(2) == 0);
    CHECK(optimal_iterations_rounded(4) == 1);
    CHECK(optimal_iterations_rounded(1024) == 25);
    CHECK(optimal_iterations_rounded(16) == 3);
    CHECK_THROWS_AS(optimal_iterations_argmin(6), SizeError);
    CHECK_THROWS_AS(optimal_iterations_argmin(1), SizeError);
}

TEST_CASE("amplitude examples") {
    AmplitudePair a = amplitude_recurrence(4, 1);
    CHECK(a.k == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a.l) < 1e-12);
    a = amplitude_recurrence(4, 0);
    CHECK(a.k == doctest::Approx(0.5));
    CHECK(a.l == doctest::Approx(0.5));
    const AmplitudePair r = amplitude_recurrence(8, 3);
    const AmplitudePair c = amplitude_closed_form(8, 3);
    CHECK(std::abs(r.k - c.k) < 1e-12);
    CHECK(std::abs(r.l - c.l) < 1e-12);

    CHECK(amplitude_closed_form(4, 1).k == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amplitude_closed_form(4, 0).k == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(amplitude_closed_form(4, 0).l == doctest::Approx(0.5).epsilon(1e-15));
    const AmplitudePair big = amplitude_closed_form(1024, 25);
    CHECK(big.k * big.k == doctest::Approx(0.9994).epsilon(1e-4));
}

TEST_CASE("trajectory") {
    const auto t4 = amplitude_trajectory(4, 10);
    CHECK(t4.size() == 11);
    for (std::size_t j = 0; j <= 10; ++j) {
        const bool peak = j % 3 == 1;
        CHECK((std::abs(std::abs(t4[j].k) - 1.0) < 1e-12) == peak);
    }
    const auto t2 = amplitude_trajectory(2, 8);
    for (std::size_t j = 0; j + 2 <= 8; ++j) {
        CHECK(std::abs(std::abs(t2[j].k) - std::abs(t2[j + 2].k)) < 1e-12);
        CHECK(std::abs(t2[j].k + t2[j + 2].k) < 1e-12);
    }
    const auto single = amplitude_trajectory(16, 0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].j == 0);
    CHECK(single[0].k == doctest::Approx(0.25));

    std::ostringstream os;
    write_trajectory_csv(os, t4);
    const std::string csv = os.str();
    CHECK(csv.rfind("N,j,k_j,l_j\n", 0) == 0);
    CHECK(csv.find("\n4,0,0.5,0.5\n") != std::string::npos);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("original grover examples") {
    const GroverRun r = run_original_grover(WinnerScenario(2, {1}));
    CHECK(r.iterations == 1);
    CHECK(std::abs(r.reported[1] - 1.0) < 1e-9);

    const GroverRun n3 = run_original_grover(WinnerScenario(3, {0}));
    const std::size_t J = optimal_iterations_argmin(8);
    CHECK(std::abs(n3.reported[0] - closed_winner_probability(8, J)) < 1e-12);
    CHECK(std::abs(n3.predicted_winner_probability - n3.reported[0]) < 1e-12);

    const GroverRun n1 = run_original_grover(WinnerScenario(1, {1}));
    CHECK(std::abs(n1.reported[1] -
                   closed_winner_probability(2, n1.iterations)) < 1e-12);

    const GroverRun zero = run_original_grover(WinnerScenario(2, {1}), 0);
    for (double p : zero.reported) {
        CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }

    CHECK_THROWS_AS(run_original_grover(WinnerScenario(2, {})), PromiseViolation);
    CHECK_THROWS_AS(run_original_grover(WinnerScenario(2, {0, 1})), PromiseViolation);
}

TEST_CASE("original grover matches the explicit-matrix pipeline") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint32_t x = 0; x < (1U << n); ++x) {
            for (std::size_t j = 0; j <= 3; ++j) {
                const GroverRun r = run_original_grover(WinnerScenario(n, {x}), j);
                const auto expect = dense::grover(n, x, j);
                CHECK(max_diff(r.final_state.amplitudes(), expect) < 1e-10);
            }
        }
    }
}

TEST_CASE("property: recurrence equals closed form and stays normalized") {
    for (std::size_t n = 1; n <= 12; ++n) {
        const std::uint64_t N = std::uint64_t{1} << n;
        for (std::size_t j = 0; j <= 100; ++j) {
            const AmplitudePair r = amplitude_recurrence(N, j);
            const AmplitudePair c = amplitude_closed_form(N, j);
            CHECK(std::abs(r.k - c.k) < 1e-9);
            CHECK(std::abs(r.l - c.l) < 1e-9);
            CHECK(std::abs(c.k * c.k + static_cast<double>(N - 1) * c.l * c.l - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("property: simulated amplitudes follow k_j and l_j") {
    for (std::size_t n = 1; n <= 8; ++n) {
        const std::uint64_t N = std::uint64_t{1} << n;
        const std::uint32_t winner = static_cast<std::uint32_t>((N - 1) / 3);
        const std::size_t J = optimal_iterations_argmin(N);
        for (std::size_t j = 0; j <= 2 * J; ++j) {
            const GroverRun run = run_original_grover(WinnerScenario(n, {winner}), j);
            const AmplitudePair c = amplitude_closed_form(N, j);
            for (std::uint32_t x = 0; x < N; ++x) {
                const double expect = x == winner ? std::abs(c.k) : std::abs(c.l);
                CHECK(std::abs(input_amplitude(run, x) - expect) < 1e-9);
                CHECK(std::abs(run.final_state[std::size_t{x} << 1]) < 1e-12);
            }
        }
    }
}

TEST_CASE("property: argmin J maximizes the simulated winner probability") {
    for (std::size_t n = 2; n <= 12; ++n) {
        const std::uint64_t N = std::uint64_t{1} << n;
        const std::size_t J = optimal_iterations_argmin(N);
        const auto limit = static_cast<std::size_t>(
            std::ceil(std::numbers::pi * std::sqrt(static_cast<double>(N)) / 4.0)) + 1;
        const WinnerScenario s(n, {0});
        const double best = run_original_grover(s, J).reported[0];
        for (std::size_t j = 0; j <= limit; ++j) {
            CHECK(run_original_grover(s, j).reported[0] <= best + 1e-12);
        }
    }
}

TEST_CASE("property: oracles commute with other diagonal oracles") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const QubitLayout layout = QubitLayout::standard(0, n);
        const StateVector s = random_state(n + 1, rng());
        std::vector<std::uint32_t> w1;
        std::vector<std::uint32_t> w2;
        for (std::uint32_t x = 0; x < (1U << n); ++x) {
            if (rng() % 2 == 0) {
                w1.push_back(x);
            }
            if (rng() % 2 == 0) {
                w2.push_back(x);
            }
        }
        const Oracle a = build_oracle(WinnerScenario(n, w1), layout, 0.7);
        const Oracle b = build_oracle(WinnerScenario(n, w2), layout, -2.1);
        CHECK(max_diff(a(b(s)), b(a(s))) < 1e-12);
    }
}
