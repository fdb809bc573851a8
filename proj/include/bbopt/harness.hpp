#ifndef BBOPT_HARNESS_HPP
#define BBOPT_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bbopt/asbec.hpp"
#include "bbopt/benchmarks.hpp"
#include "bbopt/config.hpp"
#include "bbopt/gd.hpp"
#include "bbopt/gedea.hpp"
#include "bbopt/irw.hpp"
#include "bbopt/run.hpp"
#include "bbopt/surrogate.hpp"

namespace bbopt {

using ordered_json = nlohmann::ordered_json;

/// Objective value divided by a small positive reference, for normalized
/// reporting across problems of different magnitude.
inline double normalize_error_ratio(double value, double reference) {
    if (reference <= 0.0)
        throw ConfigError("normalize_error_ratio: reference must be positive");
    return value / reference;
}

inline const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {"gd", "irw", "asbec", "gedea", "loh_ann"};
    return names;
}

/// Everything needed to execute one run: problem selection, start preset,
/// budget, seed, and per-algorithm tuning.
struct RunSpec {
    std::string algorithm = "asbec";
    std::string benchmark = "sphere";
    BenchmarkOptions bench_options;
    std::string start_preset = "far";  // far | near | center
    Budget budget;
    std::uint64_t seed = 1;
    int repeats = 6;
    bool use_accelerators = false;
    bool real_time = false;
    std::vector<double> weights;  // empty -> benchmark default
    double trust_weight = 0.0;
    GdConfig gd;
    IrwConfig irw;
    AsbecConfig asbec;
    GedeaConfig gedea;
    SurrogateConfig loh_ann;
    AcceleratorConfig accel;
};

inline RunSpec runspec_from_config(const IniConfig& c) {
    RunSpec s;
    s.algorithm = c.get_string("run", "algorithm", s.algorithm);
    s.benchmark = c.get_string("run", "benchmark", s.benchmark);
    s.seed = static_cast<std::uint64_t>(c.get_int("run", "seed", 1));
    s.repeats = static_cast<int>(c.get_int("run", "repeats", s.repeats));
    const long evals = c.get_int("run", "budget_evals", 0);
    const double secs = c.get_double("run", "budget_seconds", 0.0);
    if (evals > 0) s.budget.max_evaluations = evals;
    if (secs > 0) s.budget.max_seconds = secs;
    s.budget.batch_size = static_cast<int>(c.get_int("run", "batch", 8));
    s.start_preset = c.get_string("run", "start", s.start_preset);
    s.use_accelerators = c.get_bool("run", "accelerators", false);
    s.real_time = c.get_bool("run", "real_time", false);
    s.weights = c.get_double_list("run", "weights");
    s.trust_weight = c.get_double("run", "trust_weight", 0.0);
    s.bench_options.dim = static_cast<int>(c.get_int("run", "dim", 0));
    s.bench_options.noise_sigma = c.get_double("run", "noise_sigma", -1.0);
    s.bench_options.cost_seconds = c.get_double("run", "cost_seconds", -1.0);
    s.bench_options.condition_number = c.get_double("run", "condition_number", 100.0);
    s.bench_options.seed = static_cast<std::uint64_t>(c.get_int("run", "benchmark_seed", 42));
    s.gd = gd_from_config(c);
    s.irw = irw_from_config(c);
    s.asbec = asbec_from_config(c);
    s.gedea = gedea_from_config(c);
    s.loh_ann = surrogate_from_config(c);
    s.accel = accel_from_config(c);
    return s;
}

inline Point resolve_start(const BenchmarkSpec& bench, const std::string& preset) {
    if (preset == "far") return bench.start_far;
    if (preset == "near") return bench.start_near;
    if (preset == "center") return bench.problem.space.center();
    throw ConfigError("unknown start preset: " + preset + " (expected far|near|center)");
}

inline Scalarizer make_scalarizer(const BenchmarkSpec& bench, const RunSpec& spec) {
    std::vector<double> weights = spec.weights.empty() ? bench.default_weights : spec.weights;
    if (static_cast<int>(weights.size()) != bench.problem.objective_count)
        throw ConfigError("run: " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(bench.problem.objective_count) + " objectives");
    return Scalarizer{std::move(weights), bench.sense, spec.trust_weight};
}

inline RunResult execute_run(const RunSpec& spec) {
    const BenchmarkSpec bench = make_benchmark(spec.benchmark, spec.bench_options);
    const Scalarizer scal = make_scalarizer(bench, spec);
    Budget budget = spec.budget;
    if (spec.algorithm == "irw") budget.batch_size = 1;  // the walk is strictly sequential
    budget.validate();
    const Point start = resolve_start(bench, spec.start_preset);
    const AcceleratorConfig* accel = spec.use_accelerators ? &spec.accel : nullptr;

    RunResult r;
    if (spec.algorithm == "gd") {
        r = run_gd(bench.problem, start, spec.gd, scal, budget, spec.seed, spec.real_time);
    } else if (spec.algorithm == "irw") {
        r = run_irw(bench.problem, start, spec.irw, scal, budget, spec.seed, accel,
                    spec.real_time);
    } else if (spec.algorithm == "asbec") {
        r = run_asbec(bench.problem, spec.asbec, scal, budget, spec.seed, accel, &start,
                      spec.real_time);
    } else if (spec.algorithm == "gedea") {
        r = run_gedea(bench.problem, spec.gedea, scal, budget, spec.seed, &start,
                      spec.real_time);
    } else if (spec.algorithm == "loh_ann") {
        // Global sampling method: start presets do not apply.
        r = run_loh_ann(bench.problem, spec.loh_ann, scal, budget, spec.seed, spec.real_time);
    } else {
        throw ConfigError("unknown algorithm: " + spec.algorithm);
    }
    r.algorithm = spec.algorithm;
    r.benchmark = spec.benchmark;
    return r;
}

// ---------------------------------------------------------------------------
// Text formatting

/// Shortest fixed formatting that round-trips a double exactly through stod.
inline std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double_field(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(what + ": bad number '" + s + "'");
    }
    if (used != s.size()) throw ConfigError(what + ": bad number '" + s + "'");
    return v;
}

inline long parse_long_field(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(what + ": bad integer '" + s + "'");
    }
    if (used != s.size()) throw ConfigError(what + ": bad integer '" + s + "'");
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// trajectory.csv

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj) {
    os << "elapsed_seconds,eval_index,best_scalar\n";
    for (const auto& t : traj)
        os << fmt_double(t.elapsed_seconds) << ',' << t.eval_index << ','
           << fmt_double(t.best_scalar) << '\n';
}

inline std::vector<TrajectoryPoint> read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "elapsed_seconds,eval_index,best_scalar")
        throw ConfigError("trajectory.csv: missing or wrong header");
    std::vector<TrajectoryPoint> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 3) throw ConfigError("trajectory.csv: expected 3 fields per row");
        TrajectoryPoint t;
        t.elapsed_seconds = detail::parse_double_field(f[0], "trajectory.csv");
        t.eval_index = detail::parse_long_field(f[1], "trajectory.csv");
        t.best_scalar = detail::parse_double_field(f[2], "trajectory.csv");
        out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// run.json

inline ordered_json record_to_json(const EvaluationRecord& rec) {
    ordered_json j;
    j["point"] = rec.point;
    j["values"] = rec.report.values;
    j["trust_penalty"] = rec.report.trust_penalty;
    j["scalar"] = rec.scalar;
    j["eval_index"] = rec.eval_index;
    j["block_index"] = rec.block_index;
    j["elapsed_seconds"] = rec.elapsed_seconds;
    return j;
}

inline EvaluationRecord record_from_json(const ordered_json& j) {
    EvaluationRecord rec;
    rec.point = j.at("point").get<Point>();
    rec.report.values = j.at("values").get<std::vector<double>>();
    rec.report.trust_penalty = j.at("trust_penalty").get<double>();
    rec.scalar = j.at("scalar").get<double>();
    rec.eval_index = j.at("eval_index").get<long>();
    rec.block_index = j.at("block_index").get<long>();
    rec.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return rec;
}

/// Full RunResult plus the reporting context a reader needs to re-rank the
/// front or recompute aggregates. `created_at` is the only field allowed to
/// differ between two runs of the same command.
inline ordered_json run_to_json(const RunResult& r, const BenchmarkSpec& bench,
                                const Scalarizer& scal, bool with_timestamp = true) {
    ordered_json j;
    j["schema"] = "bbopt-run-v1";
    if (with_timestamp) j["created_at"] = utc_timestamp();
    j["algorithm"] = r.algorithm;
    j["benchmark"] = r.benchmark;
    j["seed"] = r.seed;
    j["sense"] = bench.sense == Sense::maximize ? "maximize" : "minimize";
    j["objective_count"] = r.objective_count;
    j["objective_names"] = bench.objective_names;
    j["weights"] = scal.weights;
    j["trust_weight"] = scal.trust_weight;
    j["reference_value"] = bench.reference_value;
    j["termination_reason"] = r.termination_reason;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["ledger"] = ordered_json{{"total_evaluations", r.ledger.total_evaluations},
                               {"total_blocks", r.ledger.total_blocks},
                               {"batch_size", r.ledger.batch_size}};
    j["final_best"] = record_to_json(r.final_best);
    j["final_error_ratio"] = normalize_error_ratio(r.final_best.scalar, bench.reference_value);
    ordered_json traj = ordered_json::array();
    for (const auto& t : r.trajectory)
        traj.push_back(ordered_json{{"elapsed_seconds", t.elapsed_seconds},
                                    {"eval_index", t.eval_index},
                                    {"best_scalar", t.best_scalar}});
    j["trajectory"] = std::move(traj);
    ordered_json front = ordered_json::array();
    for (const auto& m : r.pareto.members()) front.push_back(record_to_json(m));
    j["pareto"] = std::move(front);
    return j;
}

/// run.json contents, parsed back.
struct LoadedRun {
    std::string algorithm;
    std::string benchmark;
    std::uint64_t seed = 0;
    Sense sense = Sense::minimize;
    int objective_count = 1;
    std::vector<std::string> objective_names;
    std::vector<double> weights;
    double trust_weight = 0.0;
    double reference_value = 1.0;
    std::string termination_reason;
    double elapsed_seconds = 0.0;
    EvalLedger ledger;
    EvaluationRecord final_best;
    std::vector<TrajectoryPoint> trajectory;
    std::vector<EvaluationRecord> pareto;
};

inline LoadedRun load_run_json(std::istream& is) {
    ordered_json j;
    try {
        is >> j;
        LoadedRun r;
        r.algorithm = j.at("algorithm").get<std::string>();
        r.benchmark = j.at("benchmark").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        const std::string sense = j.at("sense").get<std::string>();
        if (sense != "minimize" && sense != "maximize")
            throw ConfigError("run.json: bad sense '" + sense + "'");
        r.sense = sense == "maximize" ? Sense::maximize : Sense::minimize;
        r.objective_count = j.at("objective_count").get<int>();
        r.objective_names = j.at("objective_names").get<std::vector<std::string>>();
        r.weights = j.at("weights").get<std::vector<double>>();
        r.trust_weight = j.at("trust_weight").get<double>();
        r.reference_value = j.at("reference_value").get<double>();
        r.termination_reason = j.at("termination_reason").get<std::string>();
        r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
        r.ledger.total_evaluations = j.at("ledger").at("total_evaluations").get<long>();
        r.ledger.total_blocks = j.at("ledger").at("total_blocks").get<long>();
        r.ledger.batch_size = j.at("ledger").at("batch_size").get<int>();
        r.final_best = record_from_json(j.at("final_best"));
        for (const auto& t : j.at("trajectory"))
            r.trajectory.push_back({t.at("elapsed_seconds").get<double>(),
                                    t.at("eval_index").get<long>(),
                                    t.at("best_scalar").get<double>()});
        for (const auto& m : j.at("pareto")) r.pareto.push_back(record_from_json(m));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("run.json: ") + e.what());
    }
}

inline LoadedRun load_run_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open " + path);
    return load_run_json(is);
}

// ---------------------------------------------------------------------------
// pareto.csv

/// One row per archive member: parameters, objectives, weighted sum; rows
/// sorted best-first under the given weights. Reweighing only re-ranks; the
/// archive itself is immutable here.
inline void write_pareto_csv(std::ostream& os, const LoadedRun& run,
                             const std::vector<double>& weights) {
    if (run.objective_count < 2)
        throw ConfigError("pareto export needs a multi-objective run; this one has " +
                          std::to_string(run.objective_count) + " objective");
    if (static_cast<int>(weights.size()) != run.objective_count)
        throw ConfigError("pareto: " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(run.objective_count) + " objectives");
    const Scalarizer scal{weights, run.sense, run.trust_weight};

    std::vector<std::size_t> order(run.pareto.size());
    std::vector<double> sums(run.pareto.size());
    for (std::size_t i = 0; i < run.pareto.size(); ++i) {
        sums[i] = scal(run.pareto[i].report);
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sums[a] != sums[b]) return better(sums[a], sums[b], run.sense);
        return run.pareto[a].eval_index < run.pareto[b].eval_index;
    });

    const std::size_t dim = run.pareto.empty() ? 0 : run.pareto.front().point.size();
    for (std::size_t d = 0; d < dim; ++d) os << 'x' << d << ',';
    for (int k = 0; k < run.objective_count; ++k) {
        if (k < static_cast<int>(run.objective_names.size()) && !run.objective_names[k].empty())
            os << run.objective_names[k];
        else
            os << "obj" << k;
        os << ',';
    }
    os << "weighted_sum\n";
    for (const std::size_t i : order) {
        const auto& rec = run.pareto[i];
        for (const double x : rec.point) os << fmt_double(x) << ',';
        for (const double v : rec.report.values) os << fmt_double(v) << ',';
        os << fmt_double(sums[i]) << '\n';
    }
}

// ---------------------------------------------------------------------------
// compare: seeded repeats and summary.csv

struct ComparisonRow {
    std::string algorithm;
    double mean_total_evals = 0.0;
    int batch_size = 1;
    double mean_blocks = 0.0;
    double mean_final = 0.0;
    double std_final = 0.0;
    double mean_seconds = 0.0;
};

inline ComparisonRow aggregate_runs(const std::string& algorithm,
                                    const std::vector<RunResult>& runs) {
    if (runs.empty()) throw ConfigError("aggregate_runs: no runs");
    ComparisonRow row;
    row.algorithm = algorithm;
    row.batch_size = runs.front().ledger.batch_size;
    const double n = static_cast<double>(runs.size());
    for (const auto& r : runs) {
        row.mean_total_evals += static_cast<double>(r.ledger.total_evaluations) / n;
        row.mean_blocks += static_cast<double>(r.ledger.total_blocks) / n;
        row.mean_final += r.final_best.scalar / n;
        row.mean_seconds += r.elapsed_seconds / n;
    }
    if (runs.size() > 1) {
        double ss = 0.0;
        for (const auto& r : runs) {
            const double d = r.final_best.scalar - row.mean_final;
            ss += d * d;
        }
        row.std_final = std::sqrt(ss / (n - 1.0));
    }
    return row;
}

inline constexpr const char* kSummaryHeader =
    "algorithm,mean_total_evals,batch_size,mean_blocks,mean_final,std_final,mean_seconds";

inline void write_summary_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << kSummaryHeader << '\n';
    for (const auto& r : rows)
        os << r.algorithm << ',' << fmt_double(r.mean_total_evals) << ',' << r.batch_size << ','
           << fmt_double(r.mean_blocks) << ',' << fmt_double(r.mean_final) << ','
           << fmt_double(r.std_final) << ',' << fmt_double(r.mean_seconds) << '\n';
}

inline std::vector<ComparisonRow> read_summary_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSummaryHeader)
        throw ConfigError("summary.csv: missing or wrong header");
    std::vector<ComparisonRow> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 7) throw ConfigError("summary.csv: expected 7 fields per row");
        ComparisonRow r;
        r.algorithm = f[0];
        r.mean_total_evals = detail::parse_double_field(f[1], "summary.csv");
        r.batch_size = static_cast<int>(detail::parse_long_field(f[2], "summary.csv"));
        r.mean_blocks = detail::parse_double_field(f[3], "summary.csv");
        r.mean_final = detail::parse_double_field(f[4], "summary.csv");
        r.std_final = detail::parse_double_field(f[5], "summary.csv");
        r.mean_seconds = detail::parse_double_field(f[6], "summary.csv");
        out.push_back(std::move(r));
    }
    return out;
}

struct CompareOutcome {
    std::vector<ComparisonRow> rows;              // one per algorithm
    std::vector<std::vector<RunResult>> runs;     // [algorithm][repeat]
    bool degenerate_sample = false;               // single repeat: std_final is 0 by definition
};

/// Runs `repeats` seeded repeats (seed = base + repeat index) of each listed
/// algorithm under the same spec and aggregates them.
inline CompareOutcome run_compare(RunSpec base, const std::vector<std::string>& algorithms,
                                  int repeats) {
    if (algorithms.empty()) throw ConfigError("compare: need at least one algorithm");
    if (repeats < 1) throw ConfigError("compare: repeats must be >= 1");
    CompareOutcome out;
    out.degenerate_sample = repeats == 1;
    const std::uint64_t base_seed = base.seed;
    for (const auto& algo : algorithms) {
        base.algorithm = algo;
        std::vector<RunResult> runs;
        runs.reserve(static_cast<std::size_t>(repeats));
        for (int i = 0; i < repeats; ++i) {
            RunSpec s = base;
            s.seed = base_seed + static_cast<std::uint64_t>(i);
            runs.push_back(execute_run(s));
        }
        out.rows.push_back(aggregate_runs(algo, runs));
        out.runs.push_back(std::move(runs));
    }
    return out;
}

inline ordered_json summary_to_json(const CompareOutcome& out, const RunSpec& base,
                                    int repeats, bool with_timestamp = true) {
    ordered_json j;
    j["schema"] = "bbopt-summary-v1";
    if (with_timestamp) j["created_at"] = utc_timestamp();
    j["benchmark"] = base.benchmark;
    j["base_seed"] = base.seed;
    j["repeats"] = repeats;
    j["degenerate_sample"] = out.degenerate_sample;
    ordered_json rows = ordered_json::array();
    for (const auto& r : out.rows)
        rows.push_back(ordered_json{{"algorithm", r.algorithm},
                                    {"mean_total_evals", r.mean_total_evals},
                                    {"batch_size", r.batch_size},
                                    {"mean_blocks", r.mean_blocks},
                                    {"mean_final", r.mean_final},
                                    {"std_final", r.std_final},
                                    {"mean_seconds", r.mean_seconds}});
    j["rows"] = std::move(rows);
    return j;
}

// ---------------------------------------------------------------------------
// Output files

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

/// Writes run.json and trajectory.csv for one result into `dir`.
inline void write_run_files(const std::filesystem::path& dir, const RunResult& r,
                            const BenchmarkSpec& bench, const Scalarizer& scal,
                            bool with_timestamp = true) {
    std::ostringstream traj;
    write_trajectory_csv(traj, r.trajectory);
    write_text_file(dir / "trajectory.csv", traj.str());
    write_text_file(dir / "run.json", run_to_json(r, bench, scal, with_timestamp).dump(2) + "\n");
}

}  // namespace bbopt

#endif
