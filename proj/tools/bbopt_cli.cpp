// Command-line front end: run algorithms on benchmarks, compare repeats,
// export Pareto fronts, and inspect the benchmark catalog.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bbopt/bbopt.hpp"

namespace fs = std::filesystem;
using namespace bbopt;

namespace {

fs::path output_root() {
    if (const char* env = std::getenv("BBOPT_OUT_DIR"); env && *env) return fs::path(env);
    return fs::path("out");
}

std::string sense_name(Sense s) { return s == Sense::maximize ? "maximize" : "minimize"; }

void describe_benchmark(std::ostream& os, const BenchmarkSpec& b) {
    const auto& space = b.problem.space;
    os << "name: " << b.name << '\n';
    os << "description: " << b.description << '\n';
    os << "dim: " << space.dim() << '\n';
    os << "objectives: " << b.problem.objective_count << '\n';
    os << "sense: " << sense_name(b.sense) << '\n';
    os << "objective_names:";
    for (const auto& n : b.objective_names) os << ' ' << n;
    os << '\n';
    os << "default_weights:";
    for (const double w : b.default_weights) os << ' ' << fmt_double(w);
    os << '\n';
    os << "noise_sigma: " << fmt_double(b.problem.noise_sigma) << '\n';
    os << "cost_seconds: " << fmt_double(b.problem.cost_seconds) << '\n';
    os << "reference_value: " << fmt_double(b.reference_value) << '\n';
    for (std::size_t i = 0; i < space.dim(); ++i)
        os << "bounds[" << i << "]: " << fmt_double(space.lower[i]) << ' '
           << fmt_double(space.upper[i]) << '\n';
    auto print_point = [&](const char* label, const Point& p) {
        os << label << ':';
        for (const double x : p) os << ' ' << fmt_double(x);
        os << '\n';
    };
    print_point("start_far", b.start_far);
    print_point("start_near", b.start_near);
    if (b.optimum_point) print_point("optimum_point", *b.optimum_point);
    if (b.optimum_value) os << "optimum_value: " << fmt_double(*b.optimum_value) << '\n';
}

// Options shared by `run` and `compare`. Every flag the user actually passed
// is layered onto the config file image, so flags override file values.
struct CommonOpts {
    std::string config_path;
    std::string algo, problem, start;
    long budget_evals = 0;
    double budget_seconds = 0;
    int batch = 0;
    long seed = 0;
    int dim = 0;
    double noise = -1, cost = -1, condition = 0;
    long bench_seed = 0;
    std::string weights, trust_weight;
    bool accel = false, real_time = false;

    CLI::Option *o_algo = nullptr, *o_problem = nullptr, *o_start = nullptr,
                *o_budget_evals = nullptr, *o_budget_seconds = nullptr, *o_batch = nullptr,
                *o_seed = nullptr, *o_dim = nullptr, *o_noise = nullptr, *o_cost = nullptr,
                *o_condition = nullptr, *o_bench_seed = nullptr, *o_weights = nullptr,
                *o_trust = nullptr, *o_accel = nullptr, *o_real_time = nullptr;

    void attach(CLI::App* cmd, bool with_algo) {
        cmd->add_option("--config", config_path, "config file (flat key = value sections)");
        if (with_algo) o_algo = cmd->add_option("--algo", algo, "algorithm id");
        o_problem = cmd->add_option("--problem", problem, "benchmark name");
        o_budget_evals = cmd->add_option("--budget-evals", budget_evals, "evaluation budget");
        o_budget_seconds =
            cmd->add_option("--budget-seconds", budget_seconds, "wall budget (simulated clock)");
        o_batch = cmd->add_option("--batch", batch, "evaluation block width");
        o_seed = cmd->add_option("--seed", seed, "base RNG seed");
        o_start = cmd->add_option("--start", start, "start preset: far|near|center");
        o_dim = cmd->add_option("--dim", dim, "benchmark dimension override");
        o_noise = cmd->add_option("--noise", noise, "benchmark noise sigma override");
        o_cost = cmd->add_option("--cost", cost, "simulated seconds per evaluation");
        o_condition = cmd->add_option("--condition", condition, "quadratic condition number");
        o_bench_seed = cmd->add_option("--bench-seed", bench_seed, "benchmark construction seed");
        o_weights = cmd->add_option("--weights", weights, "comma-separated objective weights");
        o_trust = cmd->add_option("--trust-weight", trust_weight, "trust penalty weight");
        o_accel = cmd->add_flag("--accel", accel, "enable accelerators");
        o_real_time = cmd->add_flag("--real-time", real_time, "budget by actual wall clock");
    }

    IniConfig to_config() const {
        IniConfig c = config_path.empty() ? IniConfig{} : IniConfig::from_file(config_path);
        auto set = [&](const char* key, const std::string& v) { c.set("run", key, v); };
        if (o_algo && o_algo->count()) set("algorithm", algo);
        if (o_problem->count()) set("benchmark", problem);
        if (o_budget_evals->count()) set("budget_evals", std::to_string(budget_evals));
        if (o_budget_seconds->count()) set("budget_seconds", fmt_double(budget_seconds));
        if (o_batch->count()) set("batch", std::to_string(batch));
        if (o_seed->count()) set("seed", std::to_string(seed));
        if (o_start->count()) set("start", start);
        if (o_dim->count()) set("dim", std::to_string(dim));
        if (o_noise->count()) set("noise_sigma", fmt_double(noise));
        if (o_cost->count()) set("cost_seconds", fmt_double(cost));
        if (o_condition->count()) set("condition_number", fmt_double(condition));
        if (o_bench_seed->count()) set("benchmark_seed", std::to_string(bench_seed));
        if (o_weights->count()) set("weights", weights);
        if (o_trust->count()) set("trust_weight", trust_weight);
        if (o_accel->count()) set("accelerators", "true");
        if (o_real_time->count()) set("real_time", "true");
        return c;
    }
};

int cmd_bench(const std::string& action, const std::string& name, const CommonOpts& opts) {
    if (action == "list") {
        for (const auto& n : benchmark_names()) std::cout << n << '\n';
        return 0;
    }
    // describe
    const IniConfig c = opts.to_config();
    const RunSpec spec = runspec_from_config(c);
    BenchmarkOptions bopt = spec.bench_options;
    describe_benchmark(std::cout, make_benchmark(name, bopt));
    return 0;
}

int cmd_run(const CommonOpts& opts, const std::string& out_label) {
    const RunSpec spec = runspec_from_config(opts.to_config());
    const BenchmarkSpec bench = make_benchmark(spec.benchmark, spec.bench_options);
    const Scalarizer scal = make_scalarizer(bench, spec);
    const RunResult r = execute_run(spec);

    const std::string label = out_label.empty()
                                  ? r.algorithm + "_" + r.benchmark + "_s" + std::to_string(r.seed)
                                  : out_label;
    const fs::path dir = output_root() / label;
    write_run_files(dir, r, bench, scal);

    std::cout << "algorithm: " << r.algorithm << '\n'
              << "benchmark: " << r.benchmark << '\n'
              << "seed: " << r.seed << '\n'
              << "total_evaluations: " << r.ledger.total_evaluations << '\n'
              << "total_blocks: " << r.ledger.total_blocks << '\n'
              << "batch_size: " << r.ledger.batch_size << '\n'
              << "final_best: " << fmt_double(r.final_best.scalar) << '\n'
              << "final_error_ratio: "
              << fmt_double(normalize_error_ratio(r.final_best.scalar, bench.reference_value))
              << '\n'
              << "termination_reason: " << r.termination_reason << '\n'
              << "elapsed_seconds: " << fmt_double(r.elapsed_seconds) << '\n'
              << "output: " << (dir / "run.json").string() << '\n';
    return 0;
}

int cmd_compare(const CommonOpts& opts, const std::string& algos_csv, int repeats,
                const std::string& out_label) {
    RunSpec base = runspec_from_config(opts.to_config());
    if (repeats > 0) base.repeats = repeats;

    std::vector<std::string> algos;
    std::istringstream is(algos_csv);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) algos.push_back(item);

    const CompareOutcome out = run_compare(base, algos, base.repeats);
    if (out.degenerate_sample)
        std::cerr << "warning: single repeat; std_final is 0 by definition\n";

    const std::string label = out_label.empty() ? "compare_" + base.benchmark : out_label;
    const fs::path dir = output_root() / label;

    std::ostringstream csv;
    write_summary_csv(csv, out.rows);
    write_text_file(dir / "summary.csv", csv.str());
    write_text_file(dir / "summary.json",
                    summary_to_json(out, base, base.repeats).dump(2) + "\n");

    for (std::size_t a = 0; a < out.runs.size(); ++a) {
        RunSpec spec = base;
        spec.algorithm = out.rows[a].algorithm;
        for (std::size_t i = 0; i < out.runs[a].size(); ++i) {
            spec.seed = base.seed + i;
            const BenchmarkSpec bench = make_benchmark(spec.benchmark, spec.bench_options);
            const Scalarizer scal = make_scalarizer(bench, spec);
            write_run_files(dir / out.rows[a].algorithm / ("repeat_" + std::to_string(i)),
                            out.runs[a][i], bench, scal);
        }
    }
    std::cout << csv.str() << "output: " << (dir / "summary.csv").string() << '\n';
    return 0;
}

int cmd_pareto(const std::string& run_path, const std::string& reweigh,
               const std::string& out_file) {
    fs::path src(run_path);
    if (fs::is_directory(src)) src /= "run.json";
    const LoadedRun run = load_run_json_file(src.string());

    std::vector<double> weights = run.weights;
    if (!reweigh.empty()) {
        IniConfig c;
        c.set("run", "weights", reweigh);
        weights = c.get_double_list("run", "weights");
    }

    std::ostringstream csv;
    write_pareto_csv(csv, run, weights);
    const fs::path dest = out_file.empty() ? src.parent_path() / "pareto.csv"
                                           : fs::path(out_file);
    write_text_file(dest, csv.str());
    std::cout << csv.str() << "output: " << dest.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"black-box optimization benchmark harness"};
    app.require_subcommand(1);

    auto* bench = app.add_subcommand("bench", "benchmark catalog");
    bench->require_subcommand(1);
    auto* bench_list = bench->add_subcommand("list", "list benchmark names");
    auto* bench_desc = bench->add_subcommand("describe", "describe one benchmark");
    std::string bench_name;
    bench_desc->add_option("name", bench_name, "benchmark name")->required();
    CommonOpts bench_opts;
    bench_opts.attach(bench_desc, false);

    auto* run = app.add_subcommand("run", "run one algorithm on one benchmark");
    CommonOpts run_opts;
    run_opts.attach(run, true);
    std::string run_out;
    run->add_option("--out", run_out, "output directory name under the output root");

    auto* compare = app.add_subcommand("compare", "run seeded repeats of several algorithms");
    CommonOpts cmp_opts;
    cmp_opts.attach(compare, false);
    std::string cmp_algos = "gd,irw,asbec,gedea,loh_ann";
    int cmp_repeats = 0;
    std::string cmp_out;
    compare->add_option("--algos", cmp_algos, "comma-separated algorithm ids");
    compare->add_option("--repeats", cmp_repeats, "number of seeded repeats");
    compare->add_option("--out", cmp_out, "output directory name under the output root");

    auto* pareto = app.add_subcommand("pareto", "export a run's front as pareto.csv");
    std::string par_run, par_reweigh, par_out;
    pareto->add_option("--run", par_run, "run directory or run.json path")->required();
    pareto->add_option("--reweigh", par_reweigh, "comma-separated weights for re-ranking");
    pareto->add_option("--out-file", par_out, "explicit output file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bench_list->parsed()) return cmd_bench("list", "", bench_opts);
        if (bench_desc->parsed()) return cmd_bench("describe", bench_name, bench_opts);
        if (run->parsed()) return cmd_run(run_opts, run_out);
        if (compare->parsed()) return cmd_compare(cmp_opts, cmp_algos, cmp_repeats, cmp_out);
        if (pareto->parsed()) return cmd_pareto(par_run, par_reweigh, par_out);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
