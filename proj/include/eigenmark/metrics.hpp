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

/**
 * @file
 * Marking factor, winning margin, distinguishability and summary
 * statistics over measured label counts.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigenmark/grover.hpp"
#include "eigenmark/schemes.hpp"

namespace eigenmark {

/// Observation counts indexed by reported label.
struct ShotCounts {
    std::size_t width = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;

    /// All-zero counts over 2^width labels.
    static ShotCounts empty(std::size_t width);
    /// From a label -> count map; missing labels count zero. Every label
    /// must have the same width.
    static ShotCounts from_map(const std::map<std::string, std::uint64_t> &m);

    [[nodiscard]] std::map<std::string, std::uint64_t> to_map() const;
    [[nodiscard]] std::uint64_t at(const std::string &label) const;

    friend bool operator==(const ShotCounts &, const ShotCounts &) = default;
};

/// w and w0 feeding the marking factor.
struct MarkingCounts {
    std::uint64_t w = 0;
    std::uint64_t w0 = 0;
};

/// c (weakest winner) and c' (strongest non-winner) feeding a margin.
struct MarginCounts {
    std::uint64_t c = 0;
    std::uint64_t c_prime = 0;
};

enum class MarginMode { Global, Local };

/**
 * Per-scheme w / w0:
 *  - eigenmarking: max over prefix 01, max over prefix 10
 *  - null marking: max over prefix 01, count of 10 1...1
 *  - subtle marking: max over prefix 0, count of 1 1...1
 */
MarkingCounts marking_counts(const ShotCounts &counts, SchemeKind scheme);

/// M = (w - w0) / (w + w0). Throws UndefinedMetric when w + w0 = 0.
double marking_factor(const ShotCounts &counts, SchemeKind scheme);

/// Label prefix that marks answers: "01", "01", "0", or "" (original).
std::string answer_prefix(SchemeKind scheme);

MarginCounts margin_counts(const ShotCounts &counts,
                           const WinnerScenario &scenario, SchemeKind scheme,
                           MarginMode mode);

/// W = (c - c') / c'. Throws ScenarioExcluded for no-winner and all-winner
/// scenarios and UndefinedMetric when c' = 0.
double winning_margin(const ShotCounts &counts, const WinnerScenario &scenario,
                      SchemeKind scheme, MarginMode mode);

struct MetricsRecord {
    std::optional<double> marking_factor;
    std::optional<double> margin_global;
    std::optional<double> margin_local;
    std::uint64_t w = 0;
    std::uint64_t w0 = 0;
    std::uint64_t c = 0;
    std::uint64_t c_prime = 0;

    friend bool operator==(const MetricsRecord &,
                           const MetricsRecord &) = default;
};

/// Every metric that is defined for this scenario; undefined ones stay
/// empty.
MetricsRecord compute_metrics(const ShotCounts &counts,
                              const WinnerScenario &scenario,
                              SchemeKind scheme);

/// D = min over i > 0 of min(M_i), minus max(M_0). `samples[i]` holds the
/// marking factors of the i-winner class; empty classes are skipped.
double distinguishability_worst(std::span<const std::vector<double>> samples);

enum class RootConvention {
    /// K = number of i > 0 classes included.
    IncludedClasses,
    /// K = N - 1 with N the number of i > 0 classes (K = 3 for n = 2).
    SearchSpaceMinusOne,
};

/// d = K-th root of prod_{i>0}(mean_i - mean_0). `means[0]` is the
/// no-winner mean. Throws UndefinedMetric on a non-positive difference.
double distinguishability_avg(
    std::span<const double> means,
    RootConvention convention = RootConvention::IncludedClasses);

struct Stats {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    /// Sample standard deviation, (n - 1) divisor; 0 for a single value.
    double std = 0.0;
    std::size_t count = 0;
};

Stats aggregate_stats(std::span<const double> values);

} // namespace eigenmark
