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

#include <algorithm>
#include <set>

#include "eigenmark/error.hpp"
#include "eigenmark/logic.hpp"

namespace eigenmark::logic {

namespace {

void collect(const Formula &f, std::set<std::string> &out) {
    if (f.op == Connective::Symbol) {
        out.insert(f.name);
    }
    for (const Formula &g : f.operands) {
        collect(g, out);
    }
}

/// Symbol i of `syms` takes bit (n - 1 - i) of `x`.
bool evaluate_at(const Formula &f, const std::vector<std::string> &syms,
                 std::uint32_t x) {
    switch (f.op) {
    case Connective::Symbol: {
        const auto it = std::lower_bound(syms.begin(), syms.end(), f.name);
        const auto i = static_cast<std::size_t>(it - syms.begin());
        return ((x >> (syms.size() - 1 - i)) & 1U) != 0;
    }
    case Connective::Not:
        return !evaluate_at(f.operands[0], syms, x);
    case Connective::And:
        return evaluate_at(f.operands[0], syms, x) &&
               evaluate_at(f.operands[1], syms, x);
    case Connective::Or:
        return evaluate_at(f.operands[0], syms, x) ||
               evaluate_at(f.operands[1], syms, x);
    case Connective::Implies:
        return !evaluate_at(f.operands[0], syms, x) ||
               evaluate_at(f.operands[1], syms, x);
    case Connective::Iff:
        return evaluate_at(f.operands[0], syms, x) ==
               evaluate_at(f.operands[1], syms, x);
    }
    return false;
}

} // namespace

bool evaluate(const Formula &f, const Model &m) {
    switch (f.op) {
    case Connective::Symbol: {
        const auto it = m.find(f.name);
        if (it == m.end()) {
            throw Error("model has no value for symbol '" + f.name + "'");
        }
        return it->second;
    }
    case Connective::Not:
        return !evaluate(f.operands[0], m);
    case Connective::And:
        return evaluate(f.operands[0], m) && evaluate(f.operands[1], m);
    case Connective::Or:
        return evaluate(f.operands[0], m) || evaluate(f.operands[1], m);
    case Connective::Implies:
        return !evaluate(f.operands[0], m) || evaluate(f.operands[1], m);
    case Connective::Iff:
        return evaluate(f.operands[0], m) == evaluate(f.operands[1], m);
    }
    return false;
}

std::vector<std::string> symbols(const Formula &f) {
    std::set<std::string> out;
    collect(f, out);
    return {out.begin(), out.end()};
}

std::vector<std::string> symbols(const Formula &alpha, const Formula &beta) {
    std::set<std::string> out;
    collect(alpha, out);
    collect(beta, out);
    return {out.begin(), out.end()};
}

WinnerScenario violation_set(const Formula &alpha, const Formula &beta) {
    const std::vector<std::string> syms = symbols(alpha, beta);
    if (syms.size() > kMaxSymbols) {
        throw SizeError(std::to_string(syms.size()) +
                        " symbols exceed the limit of " +
                        std::to_string(kMaxSymbols));
    }
    const std::uint32_t models = 1U << syms.size();
    std::vector<std::uint32_t> winners;
    for (std::uint32_t x = 0; x < models; ++x) {
        if (evaluate_at(alpha, syms, x) && !evaluate_at(beta, syms, x)) {
            winners.push_back(x);
        }
    }
    return {syms.size(), std::move(winners)};
}

bool entails_classical(const Formula &alpha, const Formula &beta) {
    return violation_set(alpha, beta).winner_count() == 0;
}

std::string_view decision_name(Decision d) {
    switch (d) {
    case Decision::Entails:
        return "ENTAILS";
    case Decision::DoesNotEntail:
        return "DOES-NOT-ENTAIL";
    case Decision::Indeterminate:
        break;
    }
    return "INDETERMINATE";
}

double decision_threshold(SchemeKind scheme) {
    switch (scheme) {
    case SchemeKind::SubtleMarking:
        return -0.30;
    case SchemeKind::NullMarking:
        return -0.15;
    case SchemeKind::Eigenmarking:
        return 0.20;
    case SchemeKind::Original:
        break;
    }
    throw Error("the original search cannot decide entailment");
}

QuantumEntailment entails_quantum(const Formula &alpha, const Formula &beta,
                                  const QuantumOptions &options) {
    QuantumEntailer entailer(options);
    return entailer(alpha, beta);
}

QuantumEntailer::QuantumEntailer(QuantumOptions options)
    : options_(options) {
    decision_threshold(options_.scheme);
    if (options_.shots == 0) {
        throw Error("shots must be >= 1");
    }
}

QuantumEntailment QuantumEntailer::operator()(const Formula &alpha,
                                              const Formula &beta) {
    return decide(violation_set(alpha, beta));
}

QuantumEntailment QuantumEntailer::decide(const WinnerScenario &violations) {
    auto key = std::pair{violations.n(), violations.winners()};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        SchemeOptions scheme_options;
        scheme_options.null_angle = options_.null_angle;
        it = cache_
                 .emplace(std::move(key),
                          run_scheme(options_.scheme, violations, scheme_options)
                              .reported)
                 .first;
    }
    const std::vector<double> &reported = it->second;
    const std::size_t width = tag_count(options_.scheme) + violations.n();

    QuantumEntailment out;
    out.violations = violations;
    out.threshold = decision_threshold(options_.scheme);
    out.evidence =
        options_.mode == Mode::Exact
            ? expected_counts(reported, width, options_.shots)
            : sample_counts(reported, width, options_.shots, options_.seed);
    try {
        out.marking_factor = marking_factor(out.evidence, options_.scheme);
    } catch (const UndefinedMetric &) {
        out.decision = Decision::Indeterminate;
        return out;
    }
    out.decision = *out.marking_factor < out.threshold ? Decision::Entails
                                                       : Decision::DoesNotEntail;
    return out;
}

} // namespace eigenmark::logic
