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
 * The three eigenmarking circuits, each run as a single
 * selection + marking + inversion pass to a reported distribution over
 * tag + input labels.
 *
 * Register layout (QubitLayout::standard): ancilla y at qubit 0, the input
 * register above it, tag qubits on top. Eigenmarking and null marking use
 * two tags (t1 t0), subtle marking uses one (t0), the original search none.
 */
#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eigenmark/grover.hpp"
#include "eigenmark/statevector.hpp"

namespace eigenmark {

enum class SchemeKind { Original, Eigenmarking, NullMarking, SubtleMarking };

/// Short CLI/JSON name: "original", "eigen", "null", "subtle".
std::string_view scheme_name(SchemeKind kind);
/// Accepts the short names and the long forms ("eigenmarking", ...).
SchemeKind parse_scheme(std::string_view name);
std::size_t tag_count(SchemeKind kind);
QubitLayout scheme_layout(SchemeKind kind, std::size_t n);

/// How the eigenmarking tag rotations act.
enum class TagRotation {
    /// Tag-controlled Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2}) on the ancilla.
    AncillaRz,
    /// Ancilla-controlled diag(1, e^{iθ}) on the tag. Symmetric controlled
    /// phase; kept for comparison, does not reproduce the reference tables.
    TagPhase,
};

/// Null-state phase angle, fixed by calibrate_null_angle() against the
/// reference marking-factor row (see harness.hpp).
inline constexpr double kDefaultNullAngle = std::numbers::pi;

inline constexpr std::size_t kMaxSchemeInputs = 12;

struct SchemeOptions {
    double null_angle = kDefaultNullAngle;
    /// Selection + marking + inversion passes.
    std::size_t repeats = 1;
    TagRotation tag_rotation = TagRotation::AncillaRz;
};

struct SchemeRun {
    SchemeKind scheme = SchemeKind::Eigenmarking;
    WinnerScenario scenario;
    std::optional<double> null_angle;
    StateVector final_state{1};
    QubitLayout layout;
    /// Indexed by reported label (tags then input, MSB first).
    std::vector<double> reported;

    [[nodiscard]] std::size_t label_width() const {
        return layout.reported_width();
    }
};

SchemeRun run_eigenmarking(const WinnerScenario &scenario,
                           const SchemeOptions &options = {});

/// Eigenmarking plus a multi-controlled phase of `null_angle` on the
/// ancilla, controlled on t1 t0 = 10 and an all-ones input register.
SchemeRun run_null_marking(const WinnerScenario &scenario, double null_angle,
                           SchemeOptions options = {});

SchemeRun run_subtle_marking(const WinnerScenario &scenario,
                             const SchemeOptions &options = {});

/// Dispatches on `kind`. Original runs the single-winner search.
SchemeRun run_scheme(SchemeKind kind, const WinnerScenario &scenario,
                     const SchemeOptions &options = {});

/// Reported probabilities keyed by label.
std::map<std::string, double> exact_reported_distribution(const SchemeRun &run);

/// {scheme, n, winners, null_angle?, reported:{label: prob}}
nlohmann::json to_json(const SchemeRun &run);

} // namespace eigenmark
