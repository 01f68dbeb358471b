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

#include "eigenmark/grover.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "eigenmark/error.hpp"

namespace eigenmark {

namespace {

void check_power_of_two(std::uint64_t N) {
    if (N < 2 || (N & (N - 1)) != 0) {
        throw SizeError("search-space size " + std::to_string(N) +
                        " is not a power of two >= 2");
    }
}

double winner_angle(std::uint64_t N) {
    return std::asin(1.0 / std::sqrt(static_cast<double>(N)));
}

} // namespace

WinnerScenario::WinnerScenario(std::size_t n, std::vector<std::uint32_t> winners)
    : n_(n), winners_(std::move(winners)) {
    if (n < 1 || n > 31) {
        throw SizeError("input width " + std::to_string(n) + " unsupported");
    }
    std::sort(winners_.begin(), winners_.end());
    winners_.erase(std::unique(winners_.begin(), winners_.end()), winners_.end());
    if (!winners_.empty() && winners_.back() >= (std::uint64_t{1} << n)) {
        throw SizeError("winner " + std::to_string(winners_.back()) +
                        " does not fit in " + std::to_string(n) + " bits");
    }
}

WinnerScenario WinnerScenario::from_labels(std::size_t n,
                                           const std::vector<std::string> &labels) {
    std::vector<std::uint32_t> values;
    values.reserve(labels.size());
    for (const std::string &label : labels) {
        values.push_back(static_cast<std::uint32_t>(parse_label(label, n)));
    }
    return WinnerScenario(n, std::move(values));
}

WinnerScenario WinnerScenario::from_bitmask(std::size_t n, std::uint64_t mask) {
    if (n > 6) {
        throw SizeError("bitmask scenarios need n <= 6");
    }
    std::vector<std::uint32_t> values;
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
        if (((mask >> x) & 1U) != 0) {
            values.push_back(x);
        }
    }
    return WinnerScenario(n, std::move(values));
}

bool WinnerScenario::is_winner(std::uint32_t x) const {
    return std::binary_search(winners_.begin(), winners_.end(), x);
}

std::vector<std::string> WinnerScenario::winner_labels() const {
    std::vector<std::string> out;
    out.reserve(winners_.size());
    for (std::uint32_t w : winners_) {
        out.push_back(format_label(w, n_));
    }
    return out;
}

std::uint64_t WinnerScenario::bitmask() const {
    if (n_ > 6) {
        throw SizeError("bitmask needs n <= 6");
    }
    std::uint64_t mask = 0;
    for (std::uint32_t w : winners_) {
        mask |= std::uint64_t{1} << w;
    }
    return mask;
}

double WinnerScenario::winning_fraction(std::size_t tags) const {
    return static_cast<double>(winners_.size()) /
           std::ldexp(1.0, static_cast<int>(n_ + tags));
}

Oracle::Oracle(const WinnerScenario &scenario, QubitLayout layout, double theta)
    : layout_(std::move(layout)), factor_(std::polar(1.0, theta)),
      theta_(theta) {
    layout_.validate();
    if (layout_.input_qubits.size() != scenario.n()) {
        throw SizeError("winner labels have " + std::to_string(scenario.n()) +
                        " bits but the input register has " +
                        std::to_string(layout_.input_qubits.size()));
    }
    if (!(theta > -2 * std::numbers::pi && theta <= 2 * std::numbers::pi)) {
        throw Error("oracle angle outside (-2pi, 2pi]");
    }
    winning_.assign(scenario.search_space(), false);
    for (std::uint32_t w : scenario.winners()) {
        winning_[w] = true;
    }
}

StateVector Oracle::operator()(StateVector state) const {
    if (state.num_qubits() != layout_.num_qubits()) {
        throw SizeError("oracle built for " +
                        std::to_string(layout_.num_qubits()) +
                        " qubits applied to " +
                        std::to_string(state.num_qubits()));
    }
    const std::size_t ybit = std::size_t{1} << layout_.ancilla;
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ybit) != 0 && winning_[layout_.input_value(i)]) {
            amps[i] *= factor_;
        }
    }
    return state;
}

Oracle build_oracle(const WinnerScenario &scenario, const QubitLayout &layout,
                    double theta) {
    return Oracle(scenario, layout, theta);
}

StateVector grover_iteration(StateVector state, const Oracle &oracle,
                             const QubitLayout &layout) {
    state = oracle(std::move(state));
    return inversion_about_mean(std::move(state), layout.input_qubits);
}

std::size_t optimal_iterations_argmin(std::uint64_t N) {
    check_power_of_two(N);
    const double theta = winner_angle(N);
    const auto j_max = static_cast<std::size_t>(
        std::ceil(std::numbers::pi * std::sqrt(static_cast<double>(N)) / 4.0) + 1);
    std::size_t best = 0;
    double best_value = 0.0;
    for (std::size_t j = 0; j <= j_max; ++j) {
        const double c = std::cos(static_cast<double>(2 * j + 1) * theta);
        const double value = c * c / static_cast<double>(N - 1);
        if (j == 0 || value < best_value - 1e-12) {
            best = j;
            best_value = value;
        }
    }
    return best;
}

std::size_t optimal_iterations_rounded(std::uint64_t N) {
    if (N < 2) {
        throw SizeError("search-space size must be >= 2");
    }
    const double x =
        std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(N)) - 0.5;
    return static_cast<std::size_t>(std::round(x));
}

AmplitudePair amplitude_recurrence(std::uint64_t N, std::size_t j) {
    check_power_of_two(N);
    const double n = static_cast<double>(N);
    double k = 1.0 / std::sqrt(n);
    double l = k;
    for (std::size_t step = 0; step < j; ++step) {
        const double k_next = (n - 2) / n * k + 2 * (n - 1) / n * l;
        const double l_next = -2 / n * k + (n - 2) / n * l;
        k = k_next;
        l = l_next;
    }
    return {k, l, j, N};
}

AmplitudePair amplitude_closed_form(std::uint64_t N, std::size_t j) {
    check_power_of_two(N);
    const double theta = winner_angle(N);
    const double phi = static_cast<double>(2 * j + 1) * theta;
    return {std::sin(phi),
            std::cos(phi) / std::sqrt(static_cast<double>(N - 1)), j, N};
}

std::vector<AmplitudePair> amplitude_trajectory(std::uint64_t N,
                                                std::size_t j_max) {
    std::vector<AmplitudePair> points;
    points.reserve(j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        points.push_back(amplitude_closed_form(N, j));
    }
    return points;
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw Error("cannot format floating-point value");
    }
    return {buf, end};
}

void write_trajectory_csv(std::ostream &os,
                          std::span<const AmplitudePair> points) {
    os << "N,j,k_j,l_j\n";
    for (const AmplitudePair &p : points) {
        os << p.N << ',' << p.j << ',' << format_double(p.k) << ','
           << format_double(p.l) << '\n';
    }
}

GroverRun run_original_grover(const WinnerScenario &scenario,
                              std::optional<std::size_t> iterations) {
    if (scenario.winner_count() != 1) {
        throw PromiseViolation(
            "original search needs exactly one winner, got " +
            std::to_string(scenario.winner_count()));
    }
    if (scenario.n() > kMaxGroverInputs) {
        throw SizeError("original search supports n <= " +
                        std::to_string(kMaxGroverInputs));
    }
    const std::uint64_t N = scenario.search_space();
    const std::size_t J = iterations.value_or(optimal_iterations_argmin(N));

    QubitLayout layout = QubitLayout::standard(0, scenario.n());
    StateVector state = ground_state(layout.num_qubits());
    state = apply_gate(std::move(state), Gate2x2::pauli_x(), layout.ancilla);
    state = apply_hadamard_all(std::move(state), layout.input_qubits);

    const Oracle oracle = build_oracle(scenario, layout, std::numbers::pi);
    for (std::size_t j = 0; j < J; ++j) {
        state = grover_iteration(std::move(state), oracle, layout);
    }

    std::vector<double> reported =
        marginal_over_reported(probabilities(state), layout);
    const double k = amplitude_closed_form(N, J).k;
    return {std::move(state), std::move(layout), std::move(reported), J, k * k};
}

} // namespace eigenmark
