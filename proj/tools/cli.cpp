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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eigenmark/error.hpp"
#include "eigenmark/grover.hpp"
#include "eigenmark/harness.hpp"
#include "eigenmark/logic.hpp"
#include "eigenmark/schemes.hpp"

namespace eigenmark::cli {

namespace {

using nlohmann::json;

/// Raised for flag combinations CLI11 cannot express.
class UsageError : public Error {
  public:
    using Error::Error;
};

std::string fixed(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::vector<SchemeKind> schemes_from_flag(const std::string &flag) {
    if (flag == "all") {
        return {SchemeKind::Eigenmarking, SchemeKind::NullMarking,
                SchemeKind::SubtleMarking};
    }
    const SchemeKind kind = parse_scheme(flag);
    if (kind == SchemeKind::Original) {
        throw UsageError("scheme must be one of eigen, null, subtle, all");
    }
    return {kind};
}

Mode mode_from_flag(const std::string &flag,
                    const std::optional<std::uint64_t> &seed) {
    const Mode mode = parse_mode(flag);
    if (mode == Mode::Sampled && !seed) {
        throw UsageError("--seed is required in sampled mode");
    }
    return mode;
}

void write_file(const std::string &path, const std::string &bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError(path, "cannot open for writing");
    }
    os << bytes;
    os.flush();
    if (!os) {
        throw IoError(path, "write failed");
    }
}

// grover ---------------------------------------------------------------

struct GroverFlags {
    std::size_t n = 0;
    std::string winner;
    std::optional<std::size_t> iterations;
    bool json = false;
};

int cmd_grover(const GroverFlags &f, std::ostream &out) {
    if (f.winner.size() != f.n ||
        f.winner.find_first_not_of("01") != std::string::npos) {
        throw UsageError("--winner must be a " + std::to_string(f.n) +
                         "-bit string of 0 and 1");
    }
    const WinnerScenario scenario =
        WinnerScenario::from_labels(f.n, {f.winner});
    const GroverRun run = run_original_grover(scenario, f.iterations);
    const std::uint32_t x = scenario.winners().front();
    const double simulated = run.reported[x];
    const AmplitudePair kj =
        amplitude_closed_form(scenario.search_space(), run.iterations);

    if (f.json) {
        json dist = json::object();
        for (std::size_t i = 0; i < run.reported.size(); ++i) {
            dist[format_label(i, f.n)] = run.reported[i];
        }
        json config = {{"command", "grover"}, {"n", f.n}, {"winner", f.winner}};
        if (f.iterations) {
            config["iterations"] = *f.iterations;
        }
        out << json{{"config", config},
                    {"iterations", run.iterations},
                    {"distribution", dist},
                    {"winner_probability", simulated},
                    {"k_J", kj.k},
                    {"predicted_winner_probability",
                     run.predicted_winner_probability}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    out << "n=" << f.n << " winner=" << f.winner
        << " iterations=" << run.iterations << '\n';
    out << "label probability\n";
    for (std::size_t i = 0; i < run.reported.size(); ++i) {
        out << format_label(i, f.n) << ' ' << format_double(run.reported[i])
            << '\n';
    }
    out << "simulated winner probability: " << format_double(simulated) << '\n';
    out << "closed form k_J^2: " << format_double(kj.k * kj.k) << '\n';
    out << "sin^2((2J+1) asin(1/sqrt(N))): "
        << format_double(run.predicted_winner_probability) << '\n';
    return kExitOk;
}

// experiment -------------------------------------------------------------

struct ExperimentFlags {
    std::string scheme = "all";
    std::size_t n = 2;
    std::size_t reps = 40;
    std::uint64_t shots = 1024;
    std::optional<std::uint64_t> seed;
    std::string mode = "sampled";
    std::optional<double> null_angle;
    std::string out;
};

ExperimentPlan plan_from_flags(const ExperimentFlags &f) {
    ExperimentPlan plan;
    plan.schemes = schemes_from_flag(f.scheme);
    plan.n = f.n;
    plan.reps = f.reps;
    plan.shots = f.shots;
    plan.mode = mode_from_flag(f.mode, f.seed);
    plan.master_seed = f.seed.value_or(0);
    plan.null_angle = f.null_angle.value_or(kDefaultNullAngle);
    try {
        plan.validate();
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    return plan;
}

int cmd_experiment(const ExperimentFlags &f, std::ostream &out) {
    const ExperimentPlan plan = plan_from_flags(f);
    ResultsSet results = run_plan(plan, threads_from_env());
    results.config = {{"command", "experiment"},
                      {"scheme", f.scheme},
                      {"n", f.n},
                      {"reps", f.reps},
                      {"shots", f.shots},
                      {"seed", f.seed ? json(*f.seed) : json(nullptr)},
                      {"mode", f.mode},
                      {"null_angle", plan.null_angle}};
    const std::string bytes = serialize_results(results);
    if (f.out.empty()) {
        out << bytes;
        return kExitOk;
    }
    write_file(f.out, bytes);
    out << "wrote " << results.records.size() << " records to " << f.out
        << '\n';
    return kExitOk;
}

struct CalibrateFlags {
    std::size_t reps = 40;
    std::uint64_t shots = 1024;
    std::optional<std::uint64_t> seed;
    std::string mode = "sampled";
    bool json = false;
};

int cmd_calibrate(const CalibrateFlags &f, std::ostream &out) {
    ExperimentPlan plan;
    plan.reps = f.reps;
    plan.shots = f.shots;
    plan.mode = mode_from_flag(f.mode, f.seed);
    plan.master_seed = f.seed.value_or(0);
    const std::vector<double> candidates = default_null_candidates();
    const NullCalibration cal =
        calibrate_null_angle(plan, candidates, threads_from_env());
    if (f.json) {
        json j = to_json(cal);
        j["config"] = {{"command", "calibrate"},
                       {"reps", f.reps},
                       {"shots", f.shots},
                       {"seed", f.seed ? json(*f.seed) : json(nullptr)},
                       {"mode", f.mode}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "angle      M0      M1      M2      M3      M4      max|dev|\n";
    for (const NullCandidate &c : cal.candidates) {
        out << pad(fixed(c.angle, 4), 9);
        for (double m : c.class_means) {
            out << ' ' << pad(fixed(m), 7);
        }
        out << ' ' << fixed(c.row_deviation) << '\n';
    }
    out << "reference ";
    for (double m : kReferenceNullRow) {
        out << ' ' << pad(fixed(m), 7);
    }
    out << '\n';
    out << "chosen angle: " << format_double(cal.chosen_angle) << '\n';
    out << "no-winner mean within " << fixed(kCalibrationTolerance, 2) << ": "
        << cal.no_winner_hits << " candidate(s)\n";
    out << "whole row within " << fixed(kCalibrationTolerance, 2) << ": "
        << cal.row_hits << " candidate(s)\n";
    return kExitOk;
}

// analyze ----------------------------------------------------------------

struct AnalyzeFlags {
    std::string path;
    int table = 0;
    std::string format = "text";
    bool figure_counts = false;
};

std::string stats_cell(const std::optional<Stats> &s) {
    if (!s) {
        return "-";
    }
    return fixed(s->min) + " " + fixed(s->mean) + " " + fixed(s->max) + " " +
           fixed(s->std);
}

std::string opt_cell(const std::optional<double> &v, int digits = 3) {
    return v ? fixed(*v, digits) : std::string("-");
}

void text_table1(const Tables &t, std::ostream &out) {
    out << "Marking factor, mean (std) by number of winners\n";
    out << pad("scheme", 8);
    const std::size_t classes = t.rows.empty() ? 0 : t.rows[0].marking.size();
    for (std::size_t k = 0; k < classes; ++k) {
        out << pad(std::to_string(k), 17);
    }
    out << '\n';
    for (const SchemeSummary &row : t.rows) {
        out << pad(std::string(scheme_name(row.scheme)), 8);
        for (const Stats &s : row.marking) {
            out << pad(fixed(s.mean) + " (" + fixed(s.std) + ")", 17);
        }
        out << '\n';
    }
}

void text_table2(const Tables &t, std::ostream &out) {
    out << "Winning margin, min mean max std\n";
    out << pad("scheme", 8) << pad("global", 30) << "local\n";
    for (const SchemeSummary &row : t.rows) {
        out << pad(std::string(scheme_name(row.scheme)), 8)
            << pad(stats_cell(row.margin_global), 30)
            << stats_cell(row.margin_local) << '\n';
    }
}

void text_table3(const Tables &t, std::ostream &out) {
    out << "Distinguishability\n";
    out << pad("scheme", 8) << pad("D", 9) << pad("D/|M0|", 10) << pad("d", 9)
        << pad("d/|M0|", 10) << "d (K=N-1)\n";
    for (const SchemeSummary &row : t.rows) {
        out << pad(std::string(scheme_name(row.scheme)), 8)
            << pad(opt_cell(row.worst), 9)
            << pad(opt_cell(row.worst_relative), 10)
            << pad(opt_cell(row.average), 9)
            << pad(opt_cell(row.average_relative), 10)
            << opt_cell(row.average_literal) << '\n';
    }
}

int cmd_analyze(const AnalyzeFlags &f, std::ostream &out, std::ostream &err) {
    ResultsSet results;
    try {
        results = load_results(f.path);
    } catch (const Error &e) {
        err << "error: " << f.path << ": " << e.what() << '\n';
        return kExitIo;
    }
    const Tables &t = results.tables;
    if (f.figure_counts) {
        out << figure_counts_csv(results);
        return kExitOk;
    }
    const bool all = f.table == 0;
    if (f.format == "json") {
        const json j = to_json(t);
        if (all) {
            out << j.dump(2) << '\n';
        } else {
            out << j.at("table" + std::to_string(f.table)).dump(2) << '\n';
        }
        return kExitOk;
    }
    if (f.format == "csv") {
        if (all || f.table == 1) {
            out << table1_csv(t);
        }
        if (all || f.table == 2) {
            out << table2_csv(t);
        }
        if (all || f.table == 3) {
            out << table3_csv(t);
        }
        return kExitOk;
    }
    if (all || f.table == 1) {
        text_table1(t, out);
    }
    if (all || f.table == 2) {
        text_table2(t, out);
    }
    if (all || f.table == 3) {
        text_table3(t, out);
    }
    return kExitOk;
}

// entail -----------------------------------------------------------------

struct EntailFlags {
    std::string kb;
    std::string query;
    std::string scheme = "subtle";
    std::string mode = "exact";
    std::uint64_t shots = 1024;
    std::optional<std::uint64_t> seed;
    std::optional<double> null_angle;
    bool json = false;
};

logic::Formula parse_flag(const std::string &flag, const std::string &text) {
    try {
        return logic::parse(text);
    } catch (const ParseError &e) {
        throw UsageError(flag + ": parse error " + e.what());
    }
}

int cmd_entail(const EntailFlags &f, std::ostream &out) {
    const logic::Formula alpha = parse_flag("--kb", f.kb);
    const logic::Formula beta = parse_flag("--query", f.query);
    const std::vector<SchemeKind> kinds = schemes_from_flag(f.scheme);
    if (kinds.size() != 1) {
        throw UsageError("entail takes a single scheme");
    }
    const std::vector<std::string> syms = logic::symbols(alpha, beta);
    if (syms.size() > logic::kMaxSymbols) {
        throw UsageError(std::to_string(syms.size()) +
                         " symbols exceed the quantum limit of " +
                         std::to_string(logic::kMaxSymbols));
    }
    logic::QuantumOptions options;
    options.scheme = kinds[0];
    options.mode = mode_from_flag(f.mode, f.seed);
    options.shots = f.shots;
    options.seed = f.seed.value_or(0);
    options.null_angle = f.null_angle.value_or(kDefaultNullAngle);
    if (options.shots == 0) {
        throw UsageError("--shots must be >= 1");
    }

    const logic::QuantumEntailment q =
        logic::entails_quantum(alpha, beta, options);
    const bool classical = q.violations.winner_count() == 0;
    const bool agree =
        q.decision != logic::Decision::Indeterminate &&
        (q.decision == logic::Decision::Entails) == classical;
    const std::string_view classical_name = logic::decision_name(
        classical ? logic::Decision::Entails : logic::Decision::DoesNotEntail);

    if (f.json) {
        json counts = json::object();
        for (std::size_t i = 0; i < q.evidence.counts.size(); ++i) {
            if (q.evidence.counts[i] != 0) {
                counts[format_label(i, q.evidence.width)] = q.evidence.counts[i];
            }
        }
        json config = {{"command", "entail"},
                       {"kb", f.kb},
                       {"query", f.query},
                       {"scheme", f.scheme},
                       {"mode", f.mode},
                       {"shots", f.shots},
                       {"seed", f.seed ? json(*f.seed) : json(nullptr)},
                       {"null_angle", options.null_angle}};
        out << json{{"config", config},
                    {"decision", logic::decision_name(q.decision)},
                    {"decision_rule", logic::kDecisionRule},
                    {"threshold", q.threshold},
                    {"marking_factor", q.marking_factor
                                           ? json(*q.marking_factor)
                                           : json(nullptr)},
                    {"symbols", syms},
                    {"violations", q.violations.winner_labels()},
                    {"evidence", counts},
                    {"classical", classical_name},
                    {"agreement", agree}}
                   .dump(2)
            << '\n';
    } else {
        out << logic::decision_name(q.decision) << '\n';
        out << "kb: " << logic::to_string(alpha) << '\n';
        out << "query: " << logic::to_string(beta) << '\n';
        out << "symbols (msb first):";
        for (const std::string &s : syms) {
            out << ' ' << s;
        }
        out << '\n';
        out << "marking factor: "
            << (q.marking_factor ? format_double(*q.marking_factor)
                                 : std::string("undefined"))
            << '\n';
        out << "decision-rule: " << logic::kDecisionRule << " (" << f.scheme
            << ", entails when M < " << format_double(q.threshold) << ")\n";
        out << "classical: " << classical_name;
        if (!classical) {
            out << " (violating models:";
            for (const std::string &l : q.violations.winner_labels()) {
                out << ' ' << l;
            }
            out << ')';
        }
        out << '\n';
        out << "agreement: " << (agree ? "yes" : "no") << '\n';
    }
    return agree ? kExitOk : kExitDisagree;
}

// trajectory ---------------------------------------------------------------

struct TrajectoryFlags {
    std::vector<std::uint64_t> sizes;
    std::size_t jmax = 0;
    std::string out;
};

int cmd_trajectory(const TrajectoryFlags &f, std::ostream &out) {
    std::vector<AmplitudePair> points;
    for (std::uint64_t N : f.sizes) {
        if (N < 2 || (N & (N - 1)) != 0) {
            throw UsageError("N=" + std::to_string(N) +
                             " is not a power of two >= 2");
        }
        const auto traj = amplitude_trajectory(N, f.jmax);
        points.insert(points.end(), traj.begin(), traj.end());
    }
    std::ostringstream os;
    write_trajectory_csv(os, points);
    if (f.out.empty()) {
        out << os.str();
    } else {
        write_file(f.out, os.str());
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"Statevector simulation of Grover search and eigenmarking",
                 "eigenmark"};
    app.require_subcommand(1);

    GroverFlags grover;
    auto *g = app.add_subcommand("grover", "single-winner Grover search");
    g->add_option("--n", grover.n, "input qubits")
        ->required()
        ->check(CLI::Range(std::size_t{1}, kMaxGroverInputs));
    g->add_option("--winner", grover.winner, "winning n-bit label")->required();
    g->add_option("--iterations", grover.iterations,
                  "Grover iterations (default: optimal)");
    g->add_flag("--json", grover.json, "machine-readable output");

    ExperimentFlags experiment;
    auto *e = app.add_subcommand("experiment", "run the marking experiments");
    e->add_option("--scheme", experiment.scheme, "eigen, null, subtle or all")
        ->capture_default_str();
    e->add_option("--n", experiment.n, "input qubits")->capture_default_str();
    e->add_option("--reps", experiment.reps, "repetitions per scenario")
        ->capture_default_str();
    e->add_option("--shots", experiment.shots, "measurements per repetition")
        ->capture_default_str();
    e->add_option("--seed", experiment.seed, "master seed");
    e->add_option("--mode", experiment.mode, "sampled or exact")
        ->capture_default_str();
    e->add_option("--null-angle", experiment.null_angle,
                  "null-state phase angle (default: pi)");
    e->add_option("--out", experiment.out, "results file (default: stdout)");

    CalibrateFlags calibrate;
    auto *c = app.add_subcommand(
        "calibrate", "compare candidate null-state angles with the reference");
    c->add_option("--reps", calibrate.reps)->capture_default_str();
    c->add_option("--shots", calibrate.shots)->capture_default_str();
    c->add_option("--seed", calibrate.seed, "master seed");
    c->add_option("--mode", calibrate.mode, "sampled or exact")
        ->capture_default_str();
    c->add_flag("--json", calibrate.json, "machine-readable output");

    AnalyzeFlags analyze;
    auto *a = app.add_subcommand("analyze", "tables from a results file");
    a->add_option("results", analyze.path, "results JSON")->required();
    a->add_option("--table", analyze.table, "1, 2 or 3 (default: all)")
        ->check(CLI::Range(1, 3));
    a->add_option("--format", analyze.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    a->add_flag("--figure-counts", analyze.figure_counts,
                "count distributions of one scenario per class, as CSV");

    EntailFlags entail;
    auto *en = app.add_subcommand("entail", "decide kb |= query");
    en->add_option("--kb", entail.kb, "knowledge base sentence")->required();
    en->add_option("--query", entail.query, "query sentence")->required();
    en->add_option("--scheme", entail.scheme, "eigen, null or subtle")
        ->capture_default_str();
    en->add_option("--mode", entail.mode, "sampled or exact")
        ->capture_default_str();
    en->add_option("--shots", entail.shots)->capture_default_str();
    en->add_option("--seed", entail.seed, "sampling seed");
    en->add_option("--null-angle", entail.null_angle);
    en->add_flag("--json", entail.json, "machine-readable output");

    TrajectoryFlags trajectory;
    auto *t = app.add_subcommand("trajectory", "closed-form k_j and l_j");
    t->add_option("--N-list", trajectory.sizes, "comma-separated sizes")
        ->required()
        ->delimiter(',');
    t->add_option("--jmax", trajectory.jmax, "last iteration")->required();
    t->add_option("--out", trajectory.out, "CSV file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (g->parsed()) {
            return cmd_grover(grover, out);
        }
        if (e->parsed()) {
            return cmd_experiment(experiment, out);
        }
        if (c->parsed()) {
            return cmd_calibrate(calibrate, out);
        }
        if (a->parsed()) {
            return cmd_analyze(analyze, out, err);
        }
        if (en->parsed()) {
            return cmd_entail(entail, out);
        }
        return cmd_trajectory(trajectory, out);
    } catch (const IoError &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitIo;
    } catch (const Error &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }
}

} // namespace eigenmark::cli
