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
#include <random>

#include "doctest.h"

#include "eigenmark/error.hpp"
#include "eigenmark/metrics.hpp"

using namespace eigenmark;

namespace {

ShotCounts counts_of(std::size_t width,
                     std::initializer_list<std::pair<const char *, std::uint64_t>> entries) {
    ShotCounts c = ShotCounts::empty(width);
    for (const auto &[label, n] : entries) {
        c.counts[parse_label(label, width)] += n;
        c.shots += n;
    }
    return c;
}

ShotCounts random_counts(std::size_t width, std::mt19937_64 &rng) {
    ShotCounts c = ShotCounts::empty(width);
    for (auto &v : c.counts) {
        v = rng() % 200;
        c.shots += v;
    }
    return c;
}

} // namespace

TEST_CASE("shot counts maps") {
    const ShotCounts c = ShotCounts::from_map({{"01", 3}, {"11", 5}});
    CHECK(c.width == 2);
    CHECK(c.shots == 8);
    CHECK(c.at("01") == 3);
    CHECK(c.at("00") == 0);
    CHECK(c.to_map() == std::map<std::string, std::uint64_t>{{"01", 3}, {"11", 5}});
    CHECK_THROWS_AS(ShotCounts::from_map({{"01", 1}, {"1", 1}}), SizeError);
}

TEST_CASE("marking factor examples") {
    const ShotCounts e = counts_of(4, {{"0110", 192}, {"0100", 10}, {"1000", 64}, {"1111", 300}});
    CHECK(marking_factor(e, SchemeKind::Eigenmarking) == doctest::Approx(0.5));
    const MarkingCounts mc = marking_counts(e, SchemeKind::Eigenmarking);
    CHECK(mc.w == 192);
    CHECK(mc.w0 == 64);

    CHECK(marking_factor(counts_of(4, {{"0100", 7}, {"1001", 7}}), SchemeKind::Eigenmarking) == 0.0);
    CHECK(marking_factor(counts_of(4, {{"0100", 7}}), SchemeKind::Eigenmarking) == 1.0);
    CHECK(marking_factor(counts_of(4, {{"1001", 7}}), SchemeKind::Eigenmarking) == -1.0);
    CHECK_THROWS_AS(marking_factor(counts_of(4, {{"0000", 7}}), SchemeKind::Eigenmarking),
                    UndefinedMetric);
}

TEST_CASE("null and subtle marking use the null state") {
    const ShotCounts n = counts_of(4, {{"0110", 40}, {"1011", 60}, {"1010", 500}});
    const MarkingCounts nm = marking_counts(n, SchemeKind::NullMarking);
    CHECK(nm.w == 40);
    CHECK(nm.w0 == 60);
    CHECK(marking_factor(n, SchemeKind::NullMarking) == doctest::Approx(-0.2));

    const ShotCounts s = counts_of(3, {{"001", 30}, {"011", 10}, {"111", 90}, {"110", 500}});
    const MarkingCounts sm = marking_counts(s, SchemeKind::SubtleMarking);
    CHECK(sm.w == 30);
    CHECK(sm.w0 == 90);
    CHECK(marking_factor(s, SchemeKind::SubtleMarking) == doctest::Approx(-0.5));

    CHECK_THROWS_AS(marking_counts(s, SchemeKind::Original), UndefinedMetric);
    CHECK(answer_prefix(SchemeKind::SubtleMarking) == "0");
    CHECK(answer_prefix(SchemeKind::Eigenmarking) == "01");
}

TEST_CASE("winning margin examples") {
    const WinnerScenario s(2, {1});
    // c = C(0101) = 150; c' = strongest other label = 50
    const ShotCounts c = counts_of(4, {{"0101", 150}, {"0100", 50}, {"1101", 20}});
    CHECK(winning_margin(c, s, SchemeKind::Eigenmarking, MarginMode::Global) ==
          doctest::Approx(2.0));
    const ShotCounts tie = counts_of(4, {{"0101", 50}, {"1111", 50}});
    CHECK(winning_margin(tie, s, SchemeKind::Eigenmarking, MarginMode::Global) == 0.0);

    // Local mode only looks at answer-prefix non-winners.
    const ShotCounts loc = counts_of(4, {{"0101", 100}, {"0110", 25}, {"1111", 400}});
    CHECK(winning_margin(loc, s, SchemeKind::Eigenmarking, MarginMode::Local) ==
          doctest::Approx(3.0));
    CHECK(winning_margin(loc, s, SchemeKind::Eigenmarking, MarginMode::Global) ==
          doctest::Approx(-0.75));

    CHECK_THROWS_AS(winning_margin(c, WinnerScenario(2, {}), SchemeKind::Eigenmarking,
                                   MarginMode::Global),
                    ScenarioExcluded);
    CHECK_THROWS_AS(winning_margin(c, WinnerScenario(2, {0, 1, 2, 3}),
                                   SchemeKind::Eigenmarking, MarginMode::Global),
                    ScenarioExcluded);
    CHECK_THROWS_AS(winning_margin(counts_of(4, {{"0101", 5}}), s, SchemeKind::Eigenmarking,
                                   MarginMode::Global),
                    UndefinedMetric);
}

TEST_CASE("compute_metrics fills what is defined") {
    const ShotCounts c = counts_of(4, {{"0101", 150}, {"1000", 50}, {"0100", 30}});
    const MetricsRecord one = compute_metrics(c, WinnerScenario(2, {1}), SchemeKind::Eigenmarking);
    CHECK(one.marking_factor);
    CHECK(one.margin_global);
    CHECK(one.margin_local);
    CHECK(one.c == 150);
    CHECK(one.c_prime == 50);
    const MetricsRecord none = compute_metrics(c, WinnerScenario(2, {}), SchemeKind::Eigenmarking);
    CHECK(none.marking_factor);
    CHECK_FALSE(none.margin_global);
    CHECK_FALSE(none.margin_local);
}

TEST_CASE("distinguishability") {
    const std::vector<std::vector<double>> simple = {{0.0}, {0.5}};
    CHECK(distinguishability_worst(simple) == doctest::Approx(0.5));
    const std::vector<std::vector<double>> overlap = {{0.0, 0.6}, {0.5, 0.9}};
    CHECK(distinguishability_worst(overlap) == doctest::Approx(-0.1));
    const std::vector<std::vector<double>> missing = {{0.0}};
    CHECK_THROWS_AS(distinguishability_worst(missing), IncompleteCoverage);
    const std::vector<std::vector<double>> no_zero = {{}, {0.3}};
    CHECK_THROWS_AS(distinguishability_worst(no_zero), IncompleteCoverage);

    const std::vector<double> table = {0.01, 0.44, 0.46, 0.45, 0.95};
    const double d = distinguishability_avg(table);
    CHECK(d == doctest::Approx(0.532).epsilon(0.002));
    CHECK(d / 0.01 == doctest::Approx(53.19).epsilon(0.005));
    CHECK(distinguishability_avg(table, RootConvention::SearchSpaceMinusOne) ==
          doctest::Approx(0.43).epsilon(0.02));

    const std::vector<double> equal = {0.1, 0.4, 0.4, 0.4};
    CHECK(distinguishability_avg(equal) == doctest::Approx(0.3));
    const std::vector<double> bad = {0.5, 0.4, 0.9};
    CHECK_THROWS_AS(distinguishability_avg(bad), UndefinedMetric);
}

TEST_CASE("aggregate stats") {
    const std::vector<double> ones = {1, 1, 1};
    Stats s = aggregate_stats(ones);
    CHECK(s.min == 1);
    CHECK(s.mean == 1);
    CHECK(s.max == 1);
    CHECK(s.std == 0);
    const std::vector<double> two = {0, 2};
    s = aggregate_stats(two);
    CHECK(s.min == 0);
    CHECK(s.mean == 1);
    CHECK(s.max == 2);
    CHECK(s.std == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.count == 2);
    CHECK_THROWS_AS(aggregate_stats(std::vector<double>{}), Error);
}

TEST_CASE("property: marking factor lies in [-1, 1] and is scale invariant") {
    std::mt19937_64 rng(41);
    const std::pair<SchemeKind, std::size_t> kinds[] = {{SchemeKind::Eigenmarking, 4},
                                                        {SchemeKind::NullMarking, 4},
                                                        {SchemeKind::SubtleMarking, 3}};
    for (int trial = 0; trial < 300; ++trial) {
        for (const auto &[kind, width] : kinds) {
            ShotCounts c = random_counts(width, rng);
            double m = 0.0;
            try {
                m = marking_factor(c, kind);
            } catch (const UndefinedMetric &) {
                continue;
            }
            CHECK(m >= -1.0);
            CHECK(m <= 1.0);
            const std::uint64_t k = 1 + rng() % 9;
            for (auto &v : c.counts) {
                v *= k;
            }
            c.shots *= k;
            CHECK(marking_factor(c, kind) == m);
        }
    }
}

TEST_CASE("property: winning margin is at least -1 and zero iff c = c'") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const ShotCounts c = random_counts(4, rng);
        std::vector<std::uint32_t> w;
        for (std::uint32_t x = 0; x < 4; ++x) {
            if (rng() % 2 == 0) {
                w.push_back(x);
            }
        }
        if (w.empty() || w.size() == 4) {
            continue;
        }
        const WinnerScenario s(2, w);
        for (MarginMode mode : {MarginMode::Global, MarginMode::Local}) {
            const MarginCounts mc = margin_counts(c, s, SchemeKind::Eigenmarking, mode);
            if (mc.c_prime == 0) {
                continue;
            }
            const double wm = winning_margin(c, s, SchemeKind::Eigenmarking, mode);
            CHECK(wm >= -1.0);
            CHECK((wm == 0.0) == (mc.c == mc.c_prime));
        }
    }
}

TEST_CASE("property: worst-case distinguishability is translation invariant") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> samples(5);
        for (auto &cls : samples) {
            for (int i = 0; i < 5; ++i) {
                cls.push_back(u(rng));
            }
        }
        const double d = distinguishability_worst(samples);
        const double shift = u(rng);
        for (auto &cls : samples) {
            for (double &v : cls) {
                v += shift;
            }
        }
        CHECK(distinguishability_worst(samples) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("property: eigenmarking prefixes partition the labels") {
    // Every count lands in exactly one of the 00/01/10/11 groups, so w and
    // w0 never read the same label.
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        const ShotCounts c = random_counts(4, rng);
        std::uint64_t by_prefix[4] = {};
        for (std::size_t i = 0; i < 16; ++i) {
            by_prefix[i >> 2] += c.counts[i];
        }
        CHECK(by_prefix[0] + by_prefix[1] + by_prefix[2] + by_prefix[3] == c.shots);
        std::uint64_t max01 = 0;
        std::uint64_t max10 = 0;
        for (std::size_t x = 0; x < 4; ++x) {
            max01 = std::max(max01, c.counts[0b0100 | x]);
            max10 = std::max(max10, c.counts[0b1000 | x]);
        }
        const MarkingCounts mc = marking_counts(c, SchemeKind::Eigenmarking);
        CHECK(mc.w == max01);
        CHECK(mc.w0 == max10);
    }
}
