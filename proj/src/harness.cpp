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

#include "eigenmark/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "eigenmark/error.hpp"
#include "eigenmark/random.hpp"

namespace eigenmark {

using nlohmann::json;

namespace {

void check_distribution(std::span<const double> probs, std::size_t width) {
    if (probs.size() != (std::size_t{1} << width)) {
        throw SizeError("distribution has " + std::to_string(probs.size()) +
                        " entries for label width " + std::to_string(width));
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < -1e-12 || !std::isfinite(p)) {
            throw Error("invalid probability " + std::to_string(p));
        }
        total += std::max(p, 0.0);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error("probabilities sum to " + std::to_string(total));
    }
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

json stats_json(const Stats &s) {
    return {{"min", s.min},
            {"mean", s.mean},
            {"max", s.max},
            {"std", s.std},
            {"count", s.count}};
}

template <class T> void put_optional(json &j, const char *key,
                                     const std::optional<T> &v) {
    if (v) {
        j[key] = *v;
    }
}

std::string csv_number(const std::optional<double> &v) {
    return v ? format_double(*v) : std::string{};
}

json metrics_json(const MetricsRecord &m) {
    json j = json::object();
    put_optional(j, "M", m.marking_factor);
    put_optional(j, "W_global", m.margin_global);
    put_optional(j, "W_local", m.margin_local);
    j["w"] = m.w;
    j["w0"] = m.w0;
    j["c"] = m.c;
    j["c_prime"] = m.c_prime;
    return j;
}

template <class T>
std::optional<T> get_optional(const json &j, const char *key) {
    if (auto it = j.find(key); it != j.end()) {
        return it->get<T>();
    }
    return std::nullopt;
}

MetricsRecord metrics_from_json(const json &j) {
    MetricsRecord m;
    m.marking_factor = get_optional<double>(j, "M");
    m.margin_global = get_optional<double>(j, "W_global");
    m.margin_local = get_optional<double>(j, "W_local");
    m.w = j.at("w").get<std::uint64_t>();
    m.w0 = j.at("w0").get<std::uint64_t>();
    m.c = j.at("c").get<std::uint64_t>();
    m.c_prime = j.at("c_prime").get<std::uint64_t>();
    return m;
}

} // namespace

std::string_view mode_name(Mode mode) {
    return mode == Mode::Exact ? "exact" : "sampled";
}

Mode parse_mode(std::string_view name) {
    if (name == "exact") {
        return Mode::Exact;
    }
    if (name == "sampled") {
        return Mode::Sampled;
    }
    throw Error("unknown mode '" + std::string(name) + "'");
}

void ExperimentPlan::validate() const {
    if (reps < 1) {
        throw Error("reps must be >= 1");
    }
    if (shots < 1) {
        throw Error("shots must be >= 1");
    }
    if (n < 1 || n > kMaxExhaustiveInputs) {
        throw SizeError("exhaustive experiments support 1 <= n <= " +
                        std::to_string(kMaxExhaustiveInputs));
    }
    if (schemes.empty()) {
        throw Error("plan lists no schemes");
    }
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        if (schemes[i] == SchemeKind::Original) {
            throw Error("the original search has no marking metrics");
        }
        for (std::size_t k = 0; k < i; ++k) {
            if (schemes[k] == schemes[i]) {
                throw Error("scheme listed twice");
            }
        }
    }
}

std::vector<WinnerScenario> enumerate_scenarios(std::size_t n) {
    if (n < 1 || n > kMaxExhaustiveInputs) {
        throw SizeError("exhaustive enumeration supports 1 <= n <= " +
                        std::to_string(kMaxExhaustiveInputs));
    }
    const std::size_t labels = std::size_t{1} << n;
    const std::uint64_t sets = std::uint64_t{1} << labels;
    std::vector<WinnerScenario> out;
    out.reserve(sets);
    for (std::size_t k = 0; k <= labels; ++k) {
        for (std::uint64_t mask = 0; mask < sets; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) == k) {
                out.push_back(WinnerScenario::from_bitmask(n, mask));
            }
        }
    }
    return out;
}

std::vector<ScenarioClass> scenario_classes(std::size_t n) {
    std::vector<ScenarioClass> classes((std::size_t{1} << n) + 1);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        classes[k].winner_count = k;
    }
    for (WinnerScenario &s : enumerate_scenarios(n)) {
        classes[s.winner_count()].members.push_back(std::move(s));
    }
    return classes;
}

ShotCounts sample_counts(std::span<const double> probs, std::size_t width,
                         std::uint64_t shots, std::uint64_t seed) {
    check_distribution(probs, width);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += std::max(probs[i], 0.0);
        cdf[i] = acc;
    }
    ShotCounts out = ShotCounts::empty(width);
    out.shots = shots;
    SplitMix64 rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_unit() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        // Skip zero-probability labels that share the boundary.
        auto idx = static_cast<std::size_t>(it - cdf.begin());
        while (probs[idx] <= 0.0 && idx + 1 < probs.size()) {
            ++idx;
        }
        ++out.counts[idx];
    }
    return out;
}

ShotCounts expected_counts(std::span<const double> probs, std::size_t width,
                           std::uint64_t shots) {
    check_distribution(probs, width);
    ShotCounts out = ShotCounts::empty(width);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        // nearbyint under the default rounding mode: ties to even.
        const double c =
            std::nearbyint(static_cast<double>(shots) * std::max(probs[i], 0.0));
        out.counts[i] = static_cast<std::uint64_t>(c);
        out.shots += out.counts[i];
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, SchemeKind scheme,
                          std::uint64_t scenario_mask, std::uint64_t rep) {
    std::uint64_t h = SplitMix64::mix(master_seed);
    for (std::uint64_t part : {static_cast<std::uint64_t>(scheme),
                               scenario_mask, rep}) {
        h = SplitMix64::mix(h ^ SplitMix64::mix(part + SplitMix64::kGamma));
    }
    return h;
}

std::size_t threads_from_env() {
    if (const char *env = std::getenv("EIGENMARK_THREADS")) {
        char *end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return v;
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

ResultsSet run_plan(const ExperimentPlan &plan, std::size_t threads) {
    plan.validate();
    const std::vector<WinnerScenario> scenarios = enumerate_scenarios(plan.n);
    const std::size_t num_schemes = plan.schemes.size();
    const std::size_t num_scenarios = scenarios.size();

    SchemeOptions options;
    options.null_angle = plan.null_angle;
    std::vector<std::vector<double>> reported(num_schemes * num_scenarios);
    parallel_for(reported.size(), threads, [&](std::size_t i) {
        reported[i] = run_scheme(plan.schemes[i / num_scenarios],
                                 scenarios[i % num_scenarios], options)
                          .reported;
    });

    std::vector<Record> records(reported.size() * plan.reps);
    parallel_for(records.size(), threads, [&](std::size_t job) {
        const std::size_t pair = job / plan.reps;
        const std::size_t rep = job % plan.reps;
        const SchemeKind scheme = plan.schemes[pair / num_scenarios];
        const WinnerScenario &scenario = scenarios[pair % num_scenarios];
        const std::size_t w = tag_count(scheme) + plan.n;

        Record &r = records[job];
        r.scheme = scheme;
        r.scenario = scenario;
        r.rep = rep;
        r.counts = plan.mode == Mode::Exact
                       ? expected_counts(reported[pair], w, plan.shots)
                       : sample_counts(reported[pair], w, plan.shots,
                                       derive_seed(plan.master_seed, scheme,
                                                   scenario.bitmask(), rep));
        r.metrics = compute_metrics(r.counts, scenario, scheme);
    });

    ResultsSet out;
    out.plan = plan;
    out.records = std::move(records);
    out.tables = build_tables(out.plan, out.records);
    return out;
}

Tables build_tables(const ExperimentPlan &plan, std::span<const Record> records) {
    const std::size_t classes = (std::size_t{1} << plan.n) + 1;
    Tables tables;
    for (SchemeKind scheme : plan.schemes) {
        std::vector<std::vector<double>> by_class(classes);
        std::vector<bool> seen(classes, false);
        std::vector<double> global;
        std::vector<double> local;
        for (const Record &r : records) {
            if (r.scheme != scheme) {
                continue;
            }
            const std::size_t k = r.scenario.winner_count();
            seen.at(k) = true;
            if (r.metrics.marking_factor) {
                by_class[k].push_back(*r.metrics.marking_factor);
            }
            if (r.metrics.margin_global) {
                global.push_back(*r.metrics.margin_global);
            }
            if (r.metrics.margin_local) {
                local.push_back(*r.metrics.margin_local);
            }
        }

        SchemeSummary row;
        row.scheme = scheme;
        for (std::size_t k = 0; k < classes; ++k) {
            if (!seen[k] || by_class[k].empty()) {
                throw IncompleteCoverage(
                    "scheme '" + std::string(scheme_name(scheme)) +
                    "' has no marking factors for " + std::to_string(k) +
                    "-winner scenarios");
            }
            row.marking.push_back(aggregate_stats(by_class[k]));
        }
        if (!global.empty()) {
            row.margin_global = aggregate_stats(global);
        }
        if (!local.empty()) {
            row.margin_local = aggregate_stats(local);
        }

        std::vector<double> means;
        for (const Stats &s : row.marking) {
            means.push_back(s.mean);
        }
        const double m0 = std::abs(means[0]);
        row.worst = distinguishability_worst(by_class);
        try {
            row.average = distinguishability_avg(means);
            row.average_literal = distinguishability_avg(
                means, RootConvention::SearchSpaceMinusOne);
        } catch (const UndefinedMetric &) {
            // left empty: some class does not separate from the no-winner mean
        }
        if (m0 > 0.0) {
            row.worst_relative = *row.worst / m0;
            if (row.average) {
                row.average_relative = *row.average / m0;
            }
        }
        tables.rows.push_back(std::move(row));
    }
    return tables;
}

json to_json(const ExperimentPlan &plan) {
    json schemes = json::array();
    for (SchemeKind s : plan.schemes) {
        schemes.push_back(scheme_name(s));
    }
    return {{"n", plan.n},
            {"schemes", schemes},
            {"reps", plan.reps},
            {"shots", plan.shots},
            {"master_seed", plan.master_seed},
            {"mode", mode_name(plan.mode)},
            {"null_angle", plan.null_angle}};
}

ExperimentPlan plan_from_json(const json &j) {
    ExperimentPlan plan;
    plan.n = j.at("n").get<std::size_t>();
    plan.schemes.clear();
    for (const json &s : j.at("schemes")) {
        plan.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    plan.reps = j.at("reps").get<std::size_t>();
    plan.shots = j.at("shots").get<std::uint64_t>();
    plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    plan.mode = parse_mode(j.at("mode").get<std::string>());
    plan.null_angle = j.at("null_angle").get<double>();
    plan.validate();
    return plan;
}

json to_json(const Tables &tables) {
    json t1 = json::array();
    json t2 = json::array();
    json t3 = json::array();
    for (const SchemeSummary &row : tables.rows) {
        json classes = json::array();
        for (std::size_t k = 0; k < row.marking.size(); ++k) {
            json c = stats_json(row.marking[k]);
            c["winners"] = k;
            classes.push_back(std::move(c));
        }
        t1.push_back({{"scheme", scheme_name(row.scheme)},
                      {"classes", std::move(classes)}});

        json margins = {{"scheme", scheme_name(row.scheme)}};
        if (row.margin_global) {
            margins["global"] = stats_json(*row.margin_global);
        }
        if (row.margin_local) {
            margins["local"] = stats_json(*row.margin_local);
        }
        margins["local_prefix"] = answer_prefix(row.scheme);
        t2.push_back(std::move(margins));

        json d = {{"scheme", scheme_name(row.scheme)}};
        put_optional(d, "D", row.worst);
        put_optional(d, "D_rel", row.worst_relative);
        put_optional(d, "d", row.average);
        put_optional(d, "d_rel", row.average_relative);
        put_optional(d, "d_literal", row.average_literal);
        t3.push_back(std::move(d));
    }
    return {{"table1", std::move(t1)},
            {"table2", std::move(t2)},
            {"table3", std::move(t3)},
            {"notes",
             {{"std", "sample standard deviation, n-1 divisor"},
              {"margins", "pooled over all (scenario, rep) samples"},
              {"d_root", "K = number of some-winner classes; d_literal uses "
                         "K = N - 1 and disagrees with the reference table"}}}};
}

json to_json(const ResultsSet &results) {
    json records = json::array();
    for (const Record &r : results.records) {
        json counts = json::object();
        for (std::size_t i = 0; i < r.counts.counts.size(); ++i) {
            counts[format_label(i, r.counts.width)] = r.counts.counts[i];
        }
        records.push_back({{"scheme", scheme_name(r.scheme)},
                           {"winners", r.scenario.winner_labels()},
                           {"rep", r.rep},
                           {"counts", std::move(counts)},
                           {"metrics", metrics_json(r.metrics)}});
    }
    json metadata = {
        {"prng", "splitmix64"},
        {"seed_derivation", "mix(master_seed, scheme, scenario_bitmask, rep)"},
        {"null_angle", results.plan.null_angle},
        {"null_angle_source", results.plan.null_angle == kDefaultNullAngle
                                  ? "calibrated-default"
                                  : "user"},
        {"null_angle_candidates", default_null_candidates()},
    };
    if (!results.config.is_null()) {
        metadata["config"] = results.config;
    }
    return {{"plan", to_json(results.plan)},
            {"metadata", std::move(metadata)},
            {"records", std::move(records)},
            {"tables", to_json(results.tables)}};
}

ResultsSet results_from_json(const json &j) {
    ResultsSet out;
    try {
        out.plan = plan_from_json(j.at("plan"));
        for (const json &r : j.at("records")) {
            Record rec;
            rec.scheme = parse_scheme(r.at("scheme").get<std::string>());
            rec.scenario = WinnerScenario::from_labels(
                out.plan.n, r.at("winners").get<std::vector<std::string>>());
            rec.rep = r.at("rep").get<std::size_t>();
            rec.counts = ShotCounts::empty(tag_count(rec.scheme) + out.plan.n);
            for (const auto &[label, count] : r.at("counts").items()) {
                const auto c = count.get<std::uint64_t>();
                rec.counts.counts.at(parse_label(label, rec.counts.width)) += c;
                rec.counts.shots += c;
            }
            rec.metrics = metrics_from_json(r.at("metrics"));
            out.records.push_back(std::move(rec));
        }
        if (auto meta = j.find("metadata");
            meta != j.end() && meta->contains("config")) {
            out.config = meta->at("config");
        }
    } catch (const json::exception &e) {
        throw Error(std::string("results schema mismatch: ") + e.what());
    }
    out.tables = build_tables(out.plan, out.records);
    return out;
}

std::string serialize_results(const ResultsSet &results) {
    return to_json(results).dump(2) + "\n";
}

void save_results(const ResultsSet &results, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError(path.string(), "cannot open for writing");
    }
    os << serialize_results(results);
    os.flush();
    if (!os) {
        throw IoError(path.string(), "write failed");
    }
}

ResultsSet load_results(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError(path.string(), "cannot open for reading");
    }
    std::stringstream buffer;
    buffer << is.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error &e) {
        throw ParseError(e.byte > 0 ? e.byte - 1 : 0,
                         path.string() + ": malformed JSON");
    }
    return results_from_json(j);
}

std::string table1_csv(const Tables &tables) {
    std::ostringstream os;
    os << "scheme,winners,mean,std\n";
    for (const SchemeSummary &row : tables.rows) {
        for (std::size_t k = 0; k < row.marking.size(); ++k) {
            os << scheme_name(row.scheme) << ',' << k << ','
               << format_double(row.marking[k].mean) << ','
               << format_double(row.marking[k].std) << '\n';
        }
    }
    return os.str();
}

std::string table2_csv(const Tables &tables) {
    std::ostringstream os;
    os << "scheme,margin,min,mean,max,std\n";
    for (const SchemeSummary &row : tables.rows) {
        for (const auto &[name, stats] :
             {std::pair{"global", row.margin_global},
              std::pair{"local", row.margin_local}}) {
            if (!stats) {
                continue;
            }
            os << scheme_name(row.scheme) << ',' << name << ','
               << format_double(stats->min) << ',' << format_double(stats->mean)
               << ',' << format_double(stats->max) << ','
               << format_double(stats->std) << '\n';
        }
    }
    return os.str();
}

std::string table3_csv(const Tables &tables) {
    std::ostringstream os;
    os << "scheme,D,D_rel,d,d_rel,d_literal\n";
    for (const SchemeSummary &row : tables.rows) {
        os << scheme_name(row.scheme) << ',' << csv_number(row.worst) << ','
           << csv_number(row.worst_relative) << ',' << csv_number(row.average)
           << ',' << csv_number(row.average_relative) << ','
           << csv_number(row.average_literal) << '\n';
    }
    return os.str();
}

std::string figure_counts_csv(const ResultsSet &results) {
    const std::vector<ScenarioClass> classes = scenario_classes(results.plan.n);
    std::ostringstream os;
    os << "scheme,winner_count,winners,rep,label,count\n";
    for (SchemeKind scheme : results.plan.schemes) {
        for (const ScenarioClass &cls : classes) {
            const WinnerScenario &rep_scenario = cls.members.front();
            std::string winners;
            for (const std::string &label : rep_scenario.winner_labels()) {
                winners += (winners.empty() ? "" : ";") + label;
            }
            for (const Record &r : results.records) {
                if (r.scheme != scheme || !(r.scenario == rep_scenario)) {
                    continue;
                }
                for (std::size_t i = 0; i < r.counts.counts.size(); ++i) {
                    os << scheme_name(scheme) << ',' << cls.winner_count << ','
                       << winners << ',' << r.rep << ','
                       << format_label(i, r.counts.width) << ','
                       << r.counts.counts[i] << '\n';
                }
            }
        }
    }
    return os.str();
}

std::vector<double> default_null_candidates() {
    return {std::numbers::pi / 2, -std::numbers::pi / 2, std::numbers::pi};
}

NullCalibration calibrate_null_angle(const ExperimentPlan &plan,
                                     std::span<const double> candidates,
                                     std::size_t threads) {
    if (plan.n != 2) {
        throw Error("null-angle calibration uses the two-qubit reference row");
    }
    if (candidates.empty()) {
        throw Error("no candidate angles");
    }
    NullCalibration out;
    double best = 0.0;
    for (double angle : candidates) {
        ExperimentPlan p = plan;
        p.schemes = {SchemeKind::NullMarking};
        p.null_angle = angle;
        const ResultsSet results = run_plan(p, threads);

        NullCandidate c;
        c.angle = angle;
        for (std::size_t k = 0; k < kReferenceNullRow.size(); ++k) {
            const double mean = results.tables.rows[0].marking[k].mean;
            c.class_means.push_back(mean);
            c.row_deviation = std::max(c.row_deviation,
                                       std::abs(mean - kReferenceNullRow[k]));
        }
        c.no_winner_deviation = std::abs(c.class_means[0] - kReferenceNullRow[0]);
        if (c.no_winner_deviation <= kCalibrationTolerance) {
            ++out.no_winner_hits;
        }
        if (c.row_deviation <= kCalibrationTolerance) {
            ++out.row_hits;
        }
        if (out.candidates.empty() || c.row_deviation < best) {
            best = c.row_deviation;
            out.chosen_angle = angle;
        }
        out.candidates.push_back(std::move(c));
    }
    return out;
}

json to_json(const NullCalibration &calibration) {
    json candidates = json::array();
    for (const NullCandidate &c : calibration.candidates) {
        candidates.push_back({{"angle", c.angle},
                              {"class_means", c.class_means},
                              {"no_winner_deviation", c.no_winner_deviation},
                              {"row_deviation", c.row_deviation}});
    }
    return {{"candidates", std::move(candidates)},
            {"chosen_angle", calibration.chosen_angle},
            {"no_winner_hits", calibration.no_winner_hits},
            {"row_hits", calibration.row_hits},
            {"reference_row", kReferenceNullRow},
            {"tolerance", kCalibrationTolerance}};
}

} // namespace eigenmark
