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
 * Original single-winner search: phase oracle, Grover iteration,
 * iteration-count selection and the analytic amplitude tracks k_j / l_j.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "eigenmark/statevector.hpp"

namespace eigenmark {

inline constexpr std::size_t kMaxGroverInputs = 14;

/// A set of winning input patterns over an n-bit register.
class WinnerScenario {
  public:
    WinnerScenario() = default;
    /// `winners` are input-register values; duplicates are merged.
    WinnerScenario(std::size_t n, std::vector<std::uint32_t> winners);
    /// Parses n-bit labels such as "01"; throws SizeError on width mismatch.
    static WinnerScenario from_labels(std::size_t n,
                                      const std::vector<std::string> &labels);
    /// Scenario whose winners are the set bits of `mask` (bit i = input i).
    static WinnerScenario from_bitmask(std::size_t n, std::uint64_t mask);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t search_space() const noexcept {
        return std::size_t{1} << n_;
    }
    [[nodiscard]] const std::vector<std::uint32_t> &winners() const noexcept {
        return winners_;
    }
    [[nodiscard]] std::size_t winner_count() const noexcept {
        return winners_.size();
    }
    [[nodiscard]] bool is_winner(std::uint32_t x) const;
    [[nodiscard]] std::vector<std::string> winner_labels() const;
    /// Bit i set iff input i wins. Requires 2^n <= 64.
    [[nodiscard]] std::uint64_t bitmask() const;
    /// |winners| / 2^(n + tags).
    [[nodiscard]] double winning_fraction(std::size_t tags) const;

    friend bool operator==(const WinnerScenario &,
                           const WinnerScenario &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> winners_;
};

/// Diagonal phase oracle: e^{iθ} on |x, y=1> for every winner x.
class Oracle {
  public:
    Oracle(const WinnerScenario &scenario, QubitLayout layout, double theta);

    StateVector operator()(StateVector state) const;

    [[nodiscard]] double theta() const noexcept { return theta_; }

  private:
    QubitLayout layout_;
    std::vector<bool> winning_;
    Complex factor_;
    double theta_;
};

Oracle build_oracle(const WinnerScenario &scenario, const QubitLayout &layout,
                    double theta);

/// One oracle call followed by inversion about the mean over the input
/// register only.
StateVector grover_iteration(StateVector state, const Oracle &oracle,
                             const QubitLayout &layout);

/// Winner / non-winner amplitude pair after `j` iterations.
struct AmplitudePair {
    double k = 0.0;
    double l = 0.0;
    std::size_t j = 0;
    std::uint64_t N = 0;
};

/// argmin_j cos^2((2j+1) asin(1/sqrt(N))) / (N-1) over
/// 0 <= j <= ceil(pi sqrt(N) / 4) + 1. Ties (within 1e-12) go to the
/// smaller j. Throws SizeError unless N is a power of two >= 2.
std::size_t optimal_iterations_argmin(std::uint64_t N);

/// round(pi sqrt(N) / 4 - 1/2), halves away from zero.
std::size_t optimal_iterations_rounded(std::uint64_t N);

AmplitudePair amplitude_recurrence(std::uint64_t N, std::size_t j);
AmplitudePair amplitude_closed_form(std::uint64_t N, std::size_t j);

/// Closed-form points j = 0..j_max for one search-space size.
std::vector<AmplitudePair> amplitude_trajectory(std::uint64_t N,
                                                std::size_t j_max);

/// CSV with header `N,j,k_j,l_j`, shortest round-trip float formatting.
void write_trajectory_csv(std::ostream &os,
                          std::span<const AmplitudePair> points);

/// Shortest decimal string that parses back to `value`.
std::string format_double(double value);

struct GroverRun {
    StateVector final_state;
    QubitLayout layout;
    std::vector<double> reported;
    std::size_t iterations = 0;
    /// sin^2((2J+1) theta) for the iteration count used.
    double predicted_winner_probability = 0.0;
};

/// Steps 1-6 of the original algorithm. Requires exactly one winner and
/// n <= kMaxGroverInputs; `iterations` defaults to the argmin rule.
GroverRun run_original_grover(const WinnerScenario &scenario,
                              std::optional<std::size_t> iterations = {});

} // namespace eigenmark
