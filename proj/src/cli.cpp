#include "evcp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "evcp/annealer.hpp"
#include "evcp/bench.hpp"
#include "evcp/error.hpp"
#include "evcp/genetic.hpp"
#include "evcp/hybrid.hpp"
#include "evcp/instance.hpp"
#include "evcp/io.hpp"
#include "evcp/qubo.hpp"
#include "evcp/svg.hpp"
#include "evcp/tuner.hpp"

namespace evcp::cli {

namespace {

namespace fs = std::filesystem;

/// Usage problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t a = 0, b = 0;
        const int w = std::stoi(text.substr(0, x), &a);
        const int h = std::stoi(text.substr(x + 1), &b);
        if (a != x || b != text.size() - x - 1) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::exception&) {
        throw UsageError("--grid expects WxH, got '" + text + "'");
    }
}

bool parse_on_off(const std::string& text, const char* flag) {
    if (text == "on") return true;
    if (text == "off") return false;
    throw UsageError(std::string(flag) + " expects on or off, got '" + text + "'");
}

struct CommonSolverOptions {
    std::string entropy = "on";
    double temperature = 1.0;
    int entropy_sign = 1;
    int reads = AnnealConfig{}.num_reads;
    int sweeps = AnnealConfig{}.sweeps_per_read;
    unsigned threads = 0;

    void attach(CLI::App* app) {
        app->add_option("--entropy", entropy, "Entropy POI term (on|off)")->capture_default_str();
        app->add_option("--temperature", temperature, "Softmax temperature")->capture_default_str();
        app->add_option("--entropy-sign", entropy_sign, "+1 for sum P log P, -1 for -sum P log P")
            ->capture_default_str();
        app->add_option("--reads", reads, "Annealer reads")->capture_default_str();
        app->add_option("--sweeps", sweeps, "Annealer sweeps per read")->capture_default_str();
        app->add_option("--threads", threads, "Annealer worker threads (0 = all cores)");
    }

    QuboConfig qubo() const {
        QuboConfig q;
        q.use_entropy = parse_on_off(entropy, "--entropy");
        q.softmax_temperature = temperature;
        q.entropy_sign = entropy_sign;
        return q;
    }

    AnnealConfig anneal() const {
        AnnealConfig a;
        a.num_reads = reads;
        a.sweeps_per_read = sweeps;
        a.threads = threads;
        return a;
    }
};

struct GaOptions {
    int generations = GaConfig{}.generations;
    int seeded_generations = SolveConfig{}.seeded_generations;
    int population = GaConfig{}.population_size;

    void attach(CLI::App* app) {
        app->add_option("--generations", generations, "GA generations for random initialisation")
            ->capture_default_str();
        app->add_option("--seeded-generations", seeded_generations, "GA generations when seeded")
            ->capture_default_str();
        app->add_option("--population", population, "GA population size")->capture_default_str();
    }

    void apply(SolveConfig& sc) const {
        sc.ga.generations = generations;
        sc.ga.population_size = population;
        sc.seeded_generations = seeded_generations;
    }
};

LambdaParams resolve_lambdas(const std::string& text, const std::string& file) {
    if (!text.empty() && !file.empty()) {
        throw UsageError("--lambdas and --lambdas-file are mutually exclusive");
    }
    if (!file.empty()) return load_lambdas_file(file);
    if (!text.empty()) return parse_lambdas(text);
    return LambdaParams{};
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& grid, int pois, int old, int n_new, std::uint64_t seed,
                 const std::string& out_path, std::ostream& out) {
    const auto [w, h] = parse_grid(grid);
    InstanceSpec spec{w, h, pois, old, n_new, seed};
    const GridInstance inst = generate_instance(spec);
    save_instance(inst, out_path);
    out << "wrote " << label(inst) << " on " << w << "x" << h << " grid to " << out_path << "\n";
    return 0;
}

struct SolveArgs {
    std::string instance;
    std::string method;
    int runs = 5;
    std::string lambdas;
    std::string lambdas_file;
    std::uint64_t seed = 0;
    std::string out;
    std::string plot;
    std::string history;
    std::string qubo_dump;
    bool timings = false;
    CommonSolverOptions solver;
    GaOptions ga;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const GridInstance inst = load_instance(a.instance);
    const Method method = parse_method(a.method);
    SolveConfig sc;
    sc.lambdas = resolve_lambdas(a.lambdas, a.lambdas_file);
    sc.qubo = a.solver.qubo();
    sc.anneal = a.solver.anneal();
    a.ga.apply(sc);
    sc.runs = a.runs;
    sc.master_seed = a.seed;

    if (!a.qubo_dump.empty()) {
        const auto sites = candidate_sites(inst);
        std::ostringstream dump;
        write_qubo_text(build_qubo(inst, sites, sc.lambdas, sc.qubo), dump);
        io::write_file_atomic(a.qubo_dump, dump.str());
    }

    const SolveResult result = solve(inst, method, sc);
    io::write_file_atomic(a.out, result_to_json_text(result, sc.lambdas, a.timings));

    const std::string title = label(inst) + " " + std::string(to_string(method)) + ", score of " +
                              fixed(result.report.combined, 2);
    if (!a.plot.empty()) {
        io::write_file_atomic(a.plot, svg::placement_plot(inst, result.placement, title));
    }
    if (!a.history.empty()) {
        if (!result.ga_history) throw UsageError("--history needs a method with a GA stage");
        std::ostringstream h;
        write_history_text(*result.ga_history, h);
        io::write_file_atomic(a.history, h.str());
    }
    out << title << " (mean " << fixed(result.report.mean, 2) << ", variance "
        << fixed(result.report.variance, 2) << ", runs " << result.report.per_run.size() << ")\n";
    out << "wall time: annealer " << fixed(result.wall_times.annealer_seconds, 3) << " s, ga "
        << fixed(result.wall_times.ga_seconds, 3) << " s\n";
    return 0;
}

struct TuneArgs {
    std::string instance;
    int budget = 30;
    std::string method = "bayes";
    std::uint64_t seed = 0;
    std::string out;
    std::string trace;
    int runs_per_eval = 1;
    double low = 1e-3;
    double high = 1e3;
    CommonSolverOptions solver;
};

int cmd_tune(const TuneArgs& a, std::ostream& out) {
    const GridInstance inst = load_instance(a.instance);
    TunerConfig tc;
    tc.budget = a.budget;
    tc.method = parse_tuner_method(a.method);
    tc.rng_seed = a.seed;
    tc.runs_per_eval = a.runs_per_eval;
    for (auto& b : tc.bounds) b = {a.low, a.high};
    const TuneResult r = tune(inst, tc, a.solver.anneal(), a.solver.qubo());

    io::write_file_atomic(a.out, lambdas_to_json_text(r.best, r.best_score));
    const std::string trace_path = a.trace.empty() ? a.out + ".trace" : a.trace;
    std::ostringstream trace;
    write_trace_text(r.trace, trace);
    io::write_file_atomic(trace_path, trace.str());
    out << "best lambdas " << format_lambdas(r.best) << " score " << fixed(r.best_score, 2) << " after "
        << r.trace.size() << " evaluations\n";
    return 0;
}

struct BenchArgs {
    std::string suite;
    std::uint64_t seed = 0;
    std::string out_dir;
    int runs = 5;
    std::string lambdas;
    std::string lambdas_file;
    int tune_budget = 0;
    std::string tune_method = "bayes";
    int tune_reads = 0;
    int tune_sweeps = 0;
    bool timings = false;
    CommonSolverOptions solver;
    GaOptions ga;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const fs::path suite_path = a.suite;
    const auto entries = parse_suite(io::read_file(suite_path), suite_path.parent_path(), a.seed);
    if (entries.empty()) throw UsageError("suite '" + a.suite + "' lists no datasets");

    BenchConfig bc;
    bc.solve.lambdas = resolve_lambdas(a.lambdas, a.lambdas_file);
    bc.solve.qubo = a.solver.qubo();
    bc.solve.anneal = a.solver.anneal();
    a.ga.apply(bc.solve);
    bc.solve.runs = a.runs;
    bc.solve.master_seed = a.seed;
    bc.tune_budget = a.tune_budget;
    bc.tune_method = parse_tuner_method(a.tune_method);
    if (a.tune_reads > 0 || a.tune_sweeps > 0) {
        AnnealConfig t = bc.solve.anneal;
        if (a.tune_reads > 0) t.num_reads = a.tune_reads;
        if (a.tune_sweeps > 0) t.sweeps_per_read = a.tune_sweeps;
        bc.tune_anneal = t;
    }

    const fs::path dir = a.out_dir;
    std::vector<BenchRow> rows;
    std::vector<svg::BarGroup> bars;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        BenchRow row = run_bench_row(entries[i], bc, i);
        const std::string name = slug(row.dataset);
        if (!row.error) {
            std::ostringstream ga_h, hy_h;
            write_history_text(*row.ga_result->ga_history, ga_h);
            write_history_text(*row.hybrid_result->ga_history, hy_h);
            io::write_file_atomic(dir / "histories" / (name + "_ga.txt"), ga_h.str());
            io::write_file_atomic(dir / "histories" / (name + "_hybrid.txt"), hy_h.str());
            io::write_file_atomic(
                dir / (name + "_fitness.svg"),
                svg::history_plot({{"GA only", row.ga_result->ga_history->best_fitness_per_generation},
                                   {"QA + GA", row.hybrid_result->ga_history->best_fitness_per_generation}},
                                  row.dataset + ": fitness vs generation"));
            io::write_file_atomic(dir / (name + "_hybrid.svg"),
                                  svg::placement_plot(entries[i].instance, row.hybrid_result->placement,
                                                      row.dataset + " hybrid, score of " +
                                                          fixed(row.hybrid, 2)));
        }
        out << row.dataset << ": qa " << fixed(row.qa, 2) << ", ga " << fixed(row.ga, 2) << ", hybrid "
            << fixed(row.hybrid, 2) << (row.error ? " FAILED: " + *row.error : std::string()) << "\n";
        bars.push_back({row.dataset, {row.qa, row.ga, row.hybrid}});
        rows.push_back(std::move(row));
    }

    const BenchSummary summary = summarize(rows);
    io::write_file_atomic(dir / "table.csv", bench_table_csv(rows));
    io::write_file_atomic(dir / "summary.txt", bench_summary_text(rows, summary));
    io::write_file_atomic(dir / "scores.svg",
                          svg::bar_chart({"Only QA", "Only GA", "QA + GA"}, bars, "Combined score per dataset"));
    if (a.timings) {
        std::ostringstream t;
        t << "dataset,qa_seconds,ga_seconds,hybrid_annealer_seconds,hybrid_ga_seconds\n";
        for (const auto& r : rows) {
            t << r.dataset << "," << fixed(r.qa_times.total(), 3) << "," << fixed(r.ga_times.total(), 3)
              << "," << fixed(r.hybrid_times.annealer_seconds, 3) << ","
              << fixed(r.hybrid_times.ga_seconds, 3) << "\n";
        }
        io::write_file_atomic(dir / "timings.csv", t.str());
    }
    out << bench_summary_text(rows, summary);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Electric vehicle charger placement: QUBO annealing, genetic search and their hybrid"};
    app.require_subcommand(1);

    std::string grid;
    int pois = 0, old = 0, n_new = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Generate a random EVCP instance");
    gen->add_option("--grid", grid, "Grid size WxH")->required();
    gen->add_option("--pois", pois, "Number of POIs")->required();
    gen->add_option("--old", old, "Number of existing chargers")->required();
    gen->add_option("--new", n_new, "Number of new chargers")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "Instance file to write")->required();

    SolveArgs sa;
    auto* sol = app.add_subcommand("solve", "Place chargers with qa, ga or hybrid");
    sol->add_option("--instance", sa.instance, "Instance file")->required();
    sol->add_option("--method", sa.method, "qa, ga or hybrid")->required();
    sol->add_option("--runs", sa.runs, "Repeated runs")->capture_default_str();
    sol->add_option("--lambdas", sa.lambdas, "l1,l2,l3,l4 (default 1,1,1,1)");
    sol->add_option("--lambdas-file", sa.lambdas_file, "Lambda file written by tune");
    sol->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
    sol->add_option("--out", sa.out, "Result file")->required();
    sol->add_option("--plot", sa.plot, "SVG placement plot");
    sol->add_option("--history", sa.history, "Best-fitness history of the best run");
    sol->add_option("--qubo-dump", sa.qubo_dump, "Write the QUBO as 'i j q_ij' text");
    sol->add_flag("--timings", sa.timings, "Include wall times in the result file");
    sa.solver.attach(sol);
    sa.ga.attach(sol);

    TuneArgs ta;
    auto* tun = app.add_subcommand("tune", "Search lambdas minimising the qa score");
    tun->add_option("--instance", ta.instance, "Instance file")->required();
    tun->add_option("--budget", ta.budget, "Number of evaluations")->capture_default_str();
    tun->add_option("--method", ta.method, "random or bayes")->capture_default_str();
    tun->add_option("--seed", ta.seed, "RNG seed")->capture_default_str();
    tun->add_option("--out", ta.out, "Lambda file to write")->required();
    tun->add_option("--trace", ta.trace, "Trace file (default OUT.trace)");
    tun->add_option("--runs-per-eval", ta.runs_per_eval, "qa runs per evaluation")->capture_default_str();
    tun->add_option("--low", ta.low, "Lower lambda bound")->capture_default_str();
    tun->add_option("--high", ta.high, "Upper lambda bound")->capture_default_str();
    ta.solver.attach(tun);

    BenchArgs ba;
    auto* ben = app.add_subcommand("bench", "Compare qa, ga and hybrid over a dataset suite");
    ben->add_option("--suite", ba.suite, "Suite listing")->required();
    ben->add_option("--seed", ba.seed, "Master seed")->capture_default_str();
    ben->add_option("--out-dir", ba.out_dir, "Output directory")->required();
    ben->add_option("--runs", ba.runs, "Runs per method")->capture_default_str();
    ben->add_option("--lambdas", ba.lambdas, "l1,l2,l3,l4 (default 1,1,1,1)");
    ben->add_option("--lambdas-file", ba.lambdas_file, "Lambda file written by tune");
    ben->add_option("--tune-budget", ba.tune_budget, "Tune lambdas per dataset with this budget");
    ben->add_option("--tune-method", ba.tune_method, "random or bayes")->capture_default_str();
    ben->add_option("--tune-reads", ba.tune_reads, "Annealer reads while tuning");
    ben->add_option("--tune-sweeps", ba.tune_sweeps, "Annealer sweeps while tuning");
    ben->add_flag("--timings", ba.timings, "Write timings.csv");
    ba.solver.attach(ben);
    ba.ga.attach(ben);

    std::vector<const char*> argv{"evcp"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen) return cmd_generate(grid, pois, old, n_new, gen_seed, gen_out, out);
        if (*sol) return cmd_solve(sa, out);
        if (*tun) return cmd_tune(ta, out);
        if (*ben) return cmd_bench(ba, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleSpec& e) {
        err << "InfeasibleSpec: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace evcp::cli
