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

#include "eigenmark/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigenmark/error.hpp"

namespace eigenmark {

namespace {

bool has_prefix(std::size_t label, std::size_t width, const std::string &prefix) {
    if (prefix.size() > width) {
        return false;
    }
    const std::size_t shift = width - prefix.size();
    return (label >> shift) == parse_label(prefix, prefix.size());
}

std::uint64_t max_with_prefix(const ShotCounts &counts,
                              const std::string &prefix) {
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
        if (has_prefix(i, counts.width, prefix)) {
            best = std::max(best, counts.counts[i]);
        }
    }
    return best;
}

std::size_t tags_of(const ShotCounts &counts, SchemeKind scheme) {
    const std::size_t tags = tag_count(scheme);
    if (scheme == SchemeKind::Original) {
        throw UndefinedMetric("marking factor is not defined for the original "
                              "search");
    }
    if (counts.width <= tags) {
        throw SizeError("label width " + std::to_string(counts.width) +
                        " too small for scheme '" +
                        std::string(scheme_name(scheme)) + "'");
    }
    return tags;
}

} // namespace

ShotCounts ShotCounts::empty(std::size_t width) {
    if (width > 26) {
        throw SizeError("label width " + std::to_string(width) + " too large");
    }
    return {width, std::vector<std::uint64_t>(std::size_t{1} << width, 0), 0};
}

ShotCounts ShotCounts::from_map(const std::map<std::string, std::uint64_t> &m) {
    if (m.empty()) {
        throw SizeError("empty count map");
    }
    const std::size_t width = m.begin()->first.size();
    ShotCounts out = empty(width);
    for (const auto &[label, count] : m) {
        out.counts[parse_label(label, width)] += count;
        out.shots += count;
    }
    return out;
}

std::map<std::string, std::uint64_t> ShotCounts::to_map() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) {
            out.emplace(format_label(i, width), counts[i]);
        }
    }
    return out;
}

std::uint64_t ShotCounts::at(const std::string &label) const {
    return counts.at(parse_label(label, width));
}

std::string answer_prefix(SchemeKind scheme) {
    switch (scheme) {
    case SchemeKind::Eigenmarking:
    case SchemeKind::NullMarking:
        return "01";
    case SchemeKind::SubtleMarking:
        return "0";
    case SchemeKind::Original:
        return "";
    }
    return "";
}

MarkingCounts marking_counts(const ShotCounts &counts, SchemeKind scheme) {
    const std::size_t n = counts.width - tags_of(counts, scheme);
    const std::string ones(n, '1');
    switch (scheme) {
    case SchemeKind::Eigenmarking:
        return {max_with_prefix(counts, "01"), max_with_prefix(counts, "10")};
    case SchemeKind::NullMarking:
        return {max_with_prefix(counts, "01"), counts.at("10" + ones)};
    case SchemeKind::SubtleMarking:
        return {max_with_prefix(counts, "0"), counts.at("1" + ones)};
    case SchemeKind::Original:
        break;
    }
    throw UndefinedMetric("no marking factor for this scheme");
}

double marking_factor(const ShotCounts &counts, SchemeKind scheme) {
    const auto [w, w0] = marking_counts(counts, scheme);
    if (w + w0 == 0) {
        throw UndefinedMetric("marking factor undefined: w + w0 = 0");
    }
    return (static_cast<double>(w) - static_cast<double>(w0)) /
           static_cast<double>(w + w0);
}

MarginCounts margin_counts(const ShotCounts &counts,
                           const WinnerScenario &scenario, SchemeKind scheme,
                           MarginMode mode) {
    const std::size_t tags = tag_count(scheme);
    if (counts.width != tags + scenario.n()) {
        throw SizeError("count labels have width " +
                        std::to_string(counts.width) + ", scenario needs " +
                        std::to_string(tags + scenario.n()));
    }
    const std::size_t wins = scenario.winner_count();
    if (wins == 0 || wins == scenario.search_space()) {
        throw ScenarioExcluded(
            "winning margin excludes no-winner and all-winner scenarios");
    }
    const std::string prefix = answer_prefix(scheme);
    const std::size_t prefix_value =
        prefix.empty() ? 0 : parse_label(prefix, prefix.size());
    const std::size_t shift = scenario.n();

    std::vector<bool> is_winner_label(counts.counts.size(), false);
    std::uint64_t c = UINT64_MAX;
    for (std::uint32_t x : scenario.winners()) {
        const std::size_t label = (prefix_value << shift) | x;
        is_winner_label[label] = true;
        c = std::min(c, counts.counts[label]);
    }
    std::uint64_t c_prime = 0;
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
        if (is_winner_label[i]) {
            continue;
        }
        if (mode == MarginMode::Local && !has_prefix(i, counts.width, prefix)) {
            continue;
        }
        c_prime = std::max(c_prime, counts.counts[i]);
    }
    return {c, c_prime};
}

double winning_margin(const ShotCounts &counts, const WinnerScenario &scenario,
                      SchemeKind scheme, MarginMode mode) {
    const auto [c, c_prime] = margin_counts(counts, scenario, scheme, mode);
    if (c_prime == 0) {
        throw UndefinedMetric("winning margin undefined: c' = 0");
    }
    return (static_cast<double>(c) - static_cast<double>(c_prime)) /
           static_cast<double>(c_prime);
}

MetricsRecord compute_metrics(const ShotCounts &counts,
                              const WinnerScenario &scenario,
                              SchemeKind scheme) {
    MetricsRecord rec;
    const MarkingCounts mc = marking_counts(counts, scheme);
    rec.w = mc.w;
    rec.w0 = mc.w0;
    if (mc.w + mc.w0 > 0) {
        rec.marking_factor = marking_factor(counts, scheme);
    }
    const std::size_t wins = scenario.winner_count();
    if (wins == 0 || wins == scenario.search_space()) {
        return rec;
    }
    const MarginCounts global =
        margin_counts(counts, scenario, scheme, MarginMode::Global);
    const MarginCounts local =
        margin_counts(counts, scenario, scheme, MarginMode::Local);
    rec.c = global.c;
    rec.c_prime = global.c_prime;
    if (global.c_prime > 0) {
        rec.margin_global =
            winning_margin(counts, scenario, scheme, MarginMode::Global);
    }
    if (local.c_prime > 0) {
        rec.margin_local =
            winning_margin(counts, scenario, scheme, MarginMode::Local);
    }
    return rec;
}

double distinguishability_worst(std::span<const std::vector<double>> samples) {
    if (samples.empty() || samples[0].empty()) {
        throw IncompleteCoverage("no no-winner marking factors");
    }
    bool any = false;
    double worst_some = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        for (double m : samples[i]) {
            worst_some = any ? std::min(worst_some, m) : m;
            any = true;
        }
    }
    if (!any) {
        throw IncompleteCoverage("no some-winner marking factors");
    }
    const double best_none =
        *std::max_element(samples[0].begin(), samples[0].end());
    return worst_some - best_none;
}

double distinguishability_avg(std::span<const double> means,
                              RootConvention convention) {
    if (means.size() < 2) {
        throw IncompleteCoverage("average distinguishability needs the "
                                 "no-winner mean and at least one other");
    }
    double log_sum = 0.0;
    for (std::size_t i = 1; i < means.size(); ++i) {
        const double diff = means[i] - means[0];
        if (!(diff > 0.0)) {
            throw UndefinedMetric("class " + std::to_string(i) +
                                  " mean does not exceed the no-winner mean");
        }
        log_sum += std::log(diff);
    }
    const std::size_t included = means.size() - 1;
    std::size_t k = included;
    if (convention == RootConvention::SearchSpaceMinusOne) {
        if (included < 2) {
            throw UndefinedMetric("K = N - 1 is zero");
        }
        k = included - 1;
    }
    return std::exp(log_sum / static_cast<double>(k));
}

Stats aggregate_stats(std::span<const double> values) {
    if (values.empty()) {
        throw UndefinedMetric("statistics of an empty list");
    }
    Stats s;
    s.count = values.size();
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

} // namespace eigenmark
