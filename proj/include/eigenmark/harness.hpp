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
 * Experiment protocol: every winner scenario of a small register, each
 * marking scheme, `reps` repetitions of `shots` measurements, then the
 * marking-factor, winning-margin and distinguishability tables.
 *
 * Per-job seeds are SplitMix64-mixed from (master seed, scheme, scenario
 * bitmask, repetition), so results do not depend on the thread schedule.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eigenmark/grover.hpp"
#include "eigenmark/metrics.hpp"
#include "eigenmark/schemes.hpp"

namespace eigenmark {

enum class Mode { Sampled, Exact };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);

inline constexpr std::size_t kMaxExhaustiveInputs = 4;

struct ExperimentPlan {
    std::size_t n = 2;
    std::vector<SchemeKind> schemes = {SchemeKind::Eigenmarking,
                                       SchemeKind::NullMarking,
                                       SchemeKind::SubtleMarking};
    std::size_t reps = 40;
    std::uint64_t shots = 1024;
    std::uint64_t master_seed = 0;
    Mode mode = Mode::Sampled;
    double null_angle = kDefaultNullAngle;

    /// Throws Error on reps/shots of zero, n outside [1, 4], an empty or
    /// repeated scheme list, or the original scheme.
    void validate() const;

    friend bool operator==(const ExperimentPlan &,
                           const ExperimentPlan &) = default;
};

/// Scenarios sharing one winner count.
struct ScenarioClass {
    std::size_t winner_count = 0;
    std::vector<WinnerScenario> members;
};

/// All 2^(2^n) winner sets, grouped by winner count, ascending bitmask
/// within a group. Throws SizeError for n > kMaxExhaustiveInputs.
std::vector<WinnerScenario> enumerate_scenarios(std::size_t n);
std::vector<ScenarioClass> scenario_classes(std::size_t n);

/// Multinomial draw of `shots` outcomes by inverse-CDF lookup of SplitMix64
/// uniforms. Probabilities are renormalized by their sum.
ShotCounts sample_counts(std::span<const double> probs, std::size_t width,
                         std::uint64_t shots, std::uint64_t seed);

/// shots * p rounded half-to-even per label; `shots` of the result is the
/// sum of the rounded counts.
ShotCounts expected_counts(std::span<const double> probs, std::size_t width,
                           std::uint64_t shots);

std::uint64_t derive_seed(std::uint64_t master_seed, SchemeKind scheme,
                          std::uint64_t scenario_mask, std::uint64_t rep);

struct Record {
    SchemeKind scheme = SchemeKind::Eigenmarking;
    WinnerScenario scenario;
    std::size_t rep = 0;
    ShotCounts counts;
    MetricsRecord metrics;

    friend bool operator==(const Record &, const Record &) = default;
};

struct SchemeSummary {
    SchemeKind scheme = SchemeKind::Eigenmarking;
    /// Marking factor per winner count (index 0 = no winner).
    std::vector<Stats> marking;
    std::optional<Stats> margin_global;
    std::optional<Stats> margin_local;
    std::optional<double> worst;            ///< D
    std::optional<double> worst_relative;   ///< D / |mean M_0|
    std::optional<double> average;          ///< d, K = included classes
    std::optional<double> average_relative; ///< d / |mean M_0|
    std::optional<double> average_literal;  ///< d, K = N - 1
};

struct Tables {
    std::vector<SchemeSummary> rows;
};

struct ResultsSet {
    ExperimentPlan plan;
    std::vector<Record> records;
    Tables tables;
    /// Invocation settings recorded under metadata.config; null when unset.
    nlohmann::json config;
};

/// Worker count from EIGENMARK_THREADS, else the hardware concurrency.
std::size_t threads_from_env();

ResultsSet run_plan(const ExperimentPlan &plan, std::size_t threads = 1);

/// Throws IncompleteCoverage when a planned scheme lacks a winner-count
/// class.
Tables build_tables(const ExperimentPlan &plan, std::span<const Record> records);

nlohmann::json to_json(const ExperimentPlan &plan);
ExperimentPlan plan_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Tables &tables);
nlohmann::json to_json(const ResultsSet &results);
/// Rebuilds plan and records; tables are recomputed from the records.
ResultsSet results_from_json(const nlohmann::json &j);

/// Serialized form written by save_results (indented JSON + newline).
std::string serialize_results(const ResultsSet &results);
void save_results(const ResultsSet &results, const std::filesystem::path &path);
/// Throws IoError when unreadable, ParseError (byte offset) on malformed
/// JSON and Error on a schema mismatch.
ResultsSet load_results(const std::filesystem::path &path);

/// `scheme,winners,mean,std`
std::string table1_csv(const Tables &tables);
/// `scheme,margin,min,mean,max,std`
std::string table2_csv(const Tables &tables);
/// `scheme,D,D_rel,d,d_rel,d_literal`
std::string table3_csv(const Tables &tables);

/// Count distributions of the representative scenario of every class
/// (lowest bitmask): `scheme,winner_count,winners,rep,label,count`.
std::string figure_counts_csv(const ResultsSet &results);

/// Reference null-marking row (mean marking factor per winner count,
/// two-qubit register).
inline constexpr std::array<double, 5> kReferenceNullRow = {-0.42, 0.08, 0.16,
                                                            0.18, 0.10};
inline constexpr double kCalibrationTolerance = 0.10;

std::vector<double> default_null_candidates();

struct NullCandidate {
    double angle = 0.0;
    std::vector<double> class_means;
    /// |mean M_0 - reference M_0|
    double no_winner_deviation = 0.0;
    /// Largest per-class deviation from the reference row.
    double row_deviation = 0.0;
};

struct NullCalibration {
    std::vector<NullCandidate> candidates;
    double chosen_angle = kDefaultNullAngle;
    /// Candidates whose no-winner mean lies within the tolerance.
    std::size_t no_winner_hits = 0;
    /// Candidates whose whole row lies within the tolerance.
    std::size_t row_hits = 0;
};

/// Runs the null scheme of `plan` (n must be 2) for every candidate angle
/// and picks the one with the smallest row deviation.
NullCalibration calibrate_null_angle(const ExperimentPlan &plan,
                                     std::span<const double> candidates,
                                     std::size_t threads = 1);

nlohmann::json to_json(const NullCalibration &calibration);

} // namespace eigenmark
