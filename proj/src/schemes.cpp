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

#include "eigenmark/schemes.hpp"

#include <numbers>
#include <string>

#include "eigenmark/error.hpp"

namespace eigenmark {

namespace {

std::vector<Qubit> all_qubits(std::size_t m) {
    std::vector<Qubit> qs(m);
    for (std::size_t q = 0; q < m; ++q) {
        qs[q] = q;
    }
    return qs;
}

void check_inputs(const WinnerScenario &scenario) {
    if (scenario.n() > kMaxSchemeInputs) {
        throw SizeError("marking schemes support n <= " +
                        std::to_string(kMaxSchemeInputs));
    }
}

/// H on the input register and ancilla, then H on the tags.
StateVector uniform_start(const QubitLayout &layout) {
    StateVector state = ground_state(layout.num_qubits());
    std::vector<Qubit> xy = layout.input_qubits;
    xy.push_back(layout.ancilla);
    state = apply_hadamard_all(std::move(state), xy);
    return apply_hadamard_all(std::move(state), layout.tag_qubits);
}

StateVector mark_tags(StateVector state, const QubitLayout &layout,
                      TagRotation rotation) {
    const Qubit t1 = layout.tag_qubits[0];
    const Qubit t0 = layout.tag_qubits[1];
    const Qubit y = layout.ancilla;
    constexpr double quarter = std::numbers::pi / 2;
    if (rotation == TagRotation::AncillaRz) {
        const Control c0[] = {{t0, true}};
        const Control c1[] = {{t1, true}};
        state = apply_controlled_gate(std::move(state), c0,
                                      Gate2x2::rz(quarter), y);
        return apply_controlled_gate(std::move(state), c1,
                                     Gate2x2::rz(-quarter), y);
    }
    const Control cy[] = {{y, true}};
    state = apply_controlled_phase(std::move(state), cy, t0, quarter);
    return apply_controlled_phase(std::move(state), cy, t1, -quarter);
}

SchemeRun finish(SchemeKind kind, const WinnerScenario &scenario,
                 std::optional<double> null_angle, StateVector state,
                 QubitLayout layout) {
    std::vector<double> reported =
        marginal_over_reported(probabilities(state), layout);
    return {kind,
            scenario,
            null_angle,
            std::move(state),
            std::move(layout),
            std::move(reported)};
}

SchemeRun run_two_tag(const WinnerScenario &scenario,
                      std::optional<double> null_angle,
                      const SchemeOptions &options) {
    check_inputs(scenario);
    QubitLayout layout = QubitLayout::standard(2, scenario.n());
    const Oracle oracle = build_oracle(scenario, layout, std::numbers::pi / 2);
    const std::vector<Qubit> everything = all_qubits(layout.num_qubits());

    // Null state |t1 t0 x> = |10 1...1>, phase applied on y.
    std::vector<Control> null_controls = {{layout.tag_qubits[0], true},
                                          {layout.tag_qubits[1], false}};
    for (Qubit q : layout.input_qubits) {
        null_controls.push_back({q, true});
    }

    StateVector state = uniform_start(layout);
    for (std::size_t pass = 0; pass < options.repeats; ++pass) {
        state = oracle(std::move(state));
        state = mark_tags(std::move(state), layout, options.tag_rotation);
        if (null_angle) {
            state = apply_controlled_phase(std::move(state), null_controls,
                                           layout.ancilla, *null_angle);
        }
        state = inversion_about_mean(std::move(state), everything);
    }
    return finish(null_angle ? SchemeKind::NullMarking
                             : SchemeKind::Eigenmarking,
                  scenario, null_angle, std::move(state), std::move(layout));
}

} // namespace

std::string_view scheme_name(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::Original:
        return "original";
    case SchemeKind::Eigenmarking:
        return "eigen";
    case SchemeKind::NullMarking:
        return "null";
    case SchemeKind::SubtleMarking:
        return "subtle";
    }
    return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
    if (name == "original" || name == "grover") {
        return SchemeKind::Original;
    }
    if (name == "eigen" || name == "eigenmarking") {
        return SchemeKind::Eigenmarking;
    }
    if (name == "null" || name == "null-marking" || name == "nullmarking") {
        return SchemeKind::NullMarking;
    }
    if (name == "subtle" || name == "subtle-marking" ||
        name == "subtlemarking") {
        return SchemeKind::SubtleMarking;
    }
    throw Error("unknown scheme '" + std::string(name) + "'");
}

std::size_t tag_count(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::Original:
        return 0;
    case SchemeKind::SubtleMarking:
        return 1;
    default:
        return 2;
    }
}

QubitLayout scheme_layout(SchemeKind kind, std::size_t n) {
    return QubitLayout::standard(tag_count(kind), n);
}

SchemeRun run_eigenmarking(const WinnerScenario &scenario,
                           const SchemeOptions &options) {
    return run_two_tag(scenario, std::nullopt, options);
}

SchemeRun run_null_marking(const WinnerScenario &scenario, double null_angle,
                           SchemeOptions options) {
    options.null_angle = null_angle;
    return run_two_tag(scenario, null_angle, options);
}

SchemeRun run_subtle_marking(const WinnerScenario &scenario,
                             const SchemeOptions &options) {
    check_inputs(scenario);
    QubitLayout layout = QubitLayout::standard(1, scenario.n());
    const Oracle oracle = build_oracle(scenario, layout, std::numbers::pi);
    const std::vector<Qubit> everything = all_qubits(layout.num_qubits());

    // MCR(pi): t0 = 1 and every input bit 1, phase on y.
    std::vector<Control> marker = {{layout.tag_qubits[0], true}};
    for (Qubit q : layout.input_qubits) {
        marker.push_back({q, true});
    }

    StateVector state = ground_state(layout.num_qubits());
    state = apply_hadamard_all(std::move(state), everything);
    for (std::size_t pass = 0; pass < options.repeats; ++pass) {
        state = oracle(std::move(state));
        state = apply_controlled_phase(std::move(state), marker,
                                       layout.ancilla, std::numbers::pi);
        state = inversion_about_mean(std::move(state), everything);
    }
    return finish(SchemeKind::SubtleMarking, scenario, std::nullopt,
                  std::move(state), std::move(layout));
}

SchemeRun run_scheme(SchemeKind kind, const WinnerScenario &scenario,
                     const SchemeOptions &options) {
    switch (kind) {
    case SchemeKind::Eigenmarking:
        return run_eigenmarking(scenario, options);
    case SchemeKind::NullMarking:
        return run_null_marking(scenario, options.null_angle, options);
    case SchemeKind::SubtleMarking:
        return run_subtle_marking(scenario, options);
    case SchemeKind::Original: {
        GroverRun g = run_original_grover(scenario);
        return {SchemeKind::Original, scenario,         std::nullopt,
                std::move(g.final_state), std::move(g.layout),
                std::move(g.reported)};
    }
    }
    throw Error("unknown scheme");
}

std::map<std::string, double> exact_reported_distribution(const SchemeRun &run) {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < run.reported.size(); ++i) {
        out.emplace(format_label(i, run.label_width()), run.reported[i]);
    }
    return out;
}

nlohmann::json to_json(const SchemeRun &run) {
    nlohmann::json j;
    j["scheme"] = scheme_name(run.scheme);
    j["n"] = run.scenario.n();
    j["winners"] = run.scenario.winner_labels();
    if (run.null_angle) {
        j["null_angle"] = *run.null_angle;
    }
    nlohmann::json reported = nlohmann::json::object();
    for (const auto &[label, p] : exact_reported_distribution(run)) {
        reported[label] = p;
    }
    j["reported"] = std::move(reported);
    return j;
}

} // namespace eigenmark
