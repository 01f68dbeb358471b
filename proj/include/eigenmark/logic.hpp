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
 * Propositional sentences and entailment checking.
 *
 * Concrete syntax, loosest binding first:
 *
 *     iff     := implies ( "<->" iff )?
 *     implies := or ( "->" implies )?
 *     or      := and ( "|" and )*
 *     and     := unary ( "&" unary )*
 *     unary   := "~" unary | symbol | "(" iff ")"
 *
 * Unicode alternates: ¬ ∧ ∨ → ↔. Symbols match [A-Za-z][A-Za-z0-9_]*.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigenmark/grover.hpp"
#include "eigenmark/harness.hpp"
#include "eigenmark/metrics.hpp"
#include "eigenmark/schemes.hpp"

namespace eigenmark::logic {

enum class Connective { Symbol, Not, And, Or, Implies, Iff };

struct Formula {
    Connective op = Connective::Symbol;
    std::string name;              ///< Symbol only
    std::vector<Formula> operands; ///< one for Not, two for binary

    friend bool operator==(const Formula &, const Formula &) = default;
};

Formula symbol(std::string name);
Formula negation(Formula f);
Formula conjunction(Formula lhs, Formula rhs);
Formula disjunction(Formula lhs, Formula rhs);
Formula implication(Formula lhs, Formula rhs);
Formula biconditional(Formula lhs, Formula rhs);

using Model = std::map<std::string, bool>;

/// Throws ParseError carrying the byte offset of the offending token.
Formula parse(std::string_view text);

/// ASCII rendering with the fewest parentheses that parse back to `f`.
std::string to_string(const Formula &f);

/// Throws Error when `m` lacks a symbol of `f`.
bool evaluate(const Formula &f, const Model &m);

/// Distinct symbol names in lexicographic order.
std::vector<std::string> symbols(const Formula &f);
std::vector<std::string> symbols(const Formula &alpha, const Formula &beta);

inline constexpr std::size_t kMaxSymbols = kMaxSchemeInputs;

/// Models of alpha & ~beta as winner labels over the combined symbols,
/// first symbol (lexicographic) as the most significant bit. Throws
/// SizeError above kMaxSymbols symbols.
WinnerScenario violation_set(const Formula &alpha, const Formula &beta);

bool entails_classical(const Formula &alpha, const Formula &beta);

enum class Decision { Entails, DoesNotEntail, Indeterminate };

std::string_view decision_name(Decision d);

/// M below the threshold reads as "no violation".
double decision_threshold(SchemeKind scheme);

inline constexpr std::string_view kDecisionRule = "calibrated-threshold";

struct QuantumEntailment {
    Decision decision = Decision::Indeterminate;
    std::optional<double> marking_factor;
    double threshold = 0.0;
    ShotCounts evidence;
    WinnerScenario violations;
};

struct QuantumOptions {
    SchemeKind scheme = SchemeKind::SubtleMarking;
    Mode mode = Mode::Exact;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    double null_angle = kDefaultNullAngle;
};

/// Runs the marking scheme on the violation set and thresholds M.
QuantumEntailment entails_quantum(const Formula &alpha, const Formula &beta,
                                  const QuantumOptions &options = {});

/// entails_quantum with the scheme's reported distribution memoized per
/// violation set; handy for large corpora.
class QuantumEntailer {
  public:
    explicit QuantumEntailer(QuantumOptions options = {});

    QuantumEntailment operator()(const Formula &alpha, const Formula &beta);
    /// Same decision procedure starting from a violation set.
    QuantumEntailment decide(const WinnerScenario &violations);

    [[nodiscard]] const QuantumOptions &options() const noexcept {
        return options_;
    }

  private:
    QuantumOptions options_;
    std::map<std::pair<std::size_t, std::vector<std::uint32_t>>,
             std::vector<double>>
        cache_;
};

} // namespace eigenmark::logic
