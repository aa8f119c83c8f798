#include "evcp/hybrid.hpp"

#include <chrono>

#include <json.hpp>

#include "evcp/error.hpp"
#include "evcp/random.hpp"

namespace evcp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct AnnealStage {
    Placement placement;
    double seconds = 0.0;
};

AnnealStage run_annealer(const GridInstance& inst, const SolveConfig& cfg, int run) {
    const auto start = Clock::now();
    const auto sites = candidate_sites(inst);
    const QuboMatrix q = build_qubo(inst, sites, cfg.lambdas, cfg.qubo);
    const SampleSet ss = sample(q, anneal_config_for_run(cfg, run));
    AnnealStage stage;
    stage.placement = best_placement(ss, q, static_cast<std::size_t>(inst.new_charger_count));
    stage.seconds = seconds_since(start);
    return stage;
}

RunRecord run_pipeline(const GridInstance& inst, Method method, const SolveConfig& cfg, int run) {
    RunRecord rec;
    std::vector<Placement> seeds;
    if (method == Method::qa || method == Method::hybrid) {
        AnnealStage stage = run_annealer(inst, cfg, run);
        rec.times.annealer_seconds = stage.seconds;
        rec.annealer_score = run_score(stage.placement, inst);
        if (method == Method::qa) {
            rec.score = *rec.annealer_score;
            rec.placement = std::move(stage.placement);
            return rec;
        }
        seeds.push_back(std::move(stage.placement));
    }

    const auto start = Clock::now();
    const GaConfig ga = ga_config_for_run(cfg, run, method == Method::hybrid);
    EvolveResult evo = evolve(inst, ga, init_population(inst, ga, seeds));
    rec.times.ga_seconds = seconds_since(start);
    rec.score = evo.best.fitness;
    rec.placement.coords = std::move(evo.best.genes);
    rec.placement.provenance = method == Method::hybrid ? Provenance::hybrid : Provenance::ga;
    rec.history = std::move(evo.history);
    return rec;
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::qa: return "qa";
        case Method::ga: return "ga";
        case Method::hybrid: return "hybrid";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    if (text == "qa") return Method::qa;
    if (text == "ga") return Method::ga;
    if (text == "hybrid") return Method::hybrid;
    throw InvalidMethod("unknown method '" + std::string(text) + "' (expected qa, ga or hybrid)");
}

AnnealConfig anneal_config_for_run(const SolveConfig& cfg, int run) {
    AnnealConfig a = cfg.anneal;
    a.rng_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run), StreamTag::anneal);
    return a;
}

GaConfig ga_config_for_run(const SolveConfig& cfg, int run, bool seeded) {
    GaConfig g = cfg.ga;
    g.rng_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run), StreamTag::ga_evolve);
    if (seeded) g.generations = cfg.seeded_generations;
    return g;
}

SolveResult solve(const GridInstance& inst, Method method, const SolveConfig& cfg) {
    if (cfg.runs < 1) {
        throw InvalidConfig("runs must be at least 1");
    }
    if (method != Method::qa && method != Method::ga && method != Method::hybrid) {
        throw InvalidMethod("unsupported method");
    }
    validate(inst);

    SolveResult result;
    result.method = method;
    std::vector<double> scores;
    for (int r = 0; r < cfg.runs; ++r) {
        RunRecord rec = run_pipeline(inst, method, cfg, r);
        scores.push_back(rec.score);
        result.wall_times.annealer_seconds += rec.times.annealer_seconds;
        result.wall_times.ga_seconds += rec.times.ga_seconds;
        if (r == 0 || rec.score < result.runs[result.best_run].score) {
            result.best_run = static_cast<std::size_t>(r);
        }
        result.runs.push_back(std::move(rec));
    }
    result.report = aggregate(scores);
    const RunRecord& best = result.runs[result.best_run];
    result.placement = best.placement;
    result.ga_history = best.history;
    return result;
}

std::string result_to_json_text(const SolveResult& result, const LambdaParams& lambdas,
                                bool include_times) {
    using nlohmann::json;
    json doc = json::object();
    doc["method"] = std::string(to_string(result.method));
    doc["lambdas"] = json::array({lambdas.l1, lambdas.l2, lambdas.l3, lambdas.l4});
    doc["per_run"] = result.report.per_run;
    doc["mean"] = result.report.mean;
    doc["variance"] = result.report.variance;
    doc["combined"] = result.report.combined;
    json coords = json::array();
    for (const auto& p : result.placement.coords) coords.push_back(json::array({p.x, p.y}));
    doc["placement"] = {{"provenance", std::string(to_string(result.placement.provenance))},
                        {"coords", coords}};
    json stage = json::array();
    for (const auto& r : result.runs) {
        stage.push_back(r.annealer_score ? json(*r.annealer_score) : json(nullptr));
    }
    doc["annealer_stage_scores"] = stage;
    if (include_times) {
        doc["wall_times"] = {{"annealer", result.wall_times.annealer_seconds},
                             {"ga", result.wall_times.ga_seconds}};
    }
    return doc.dump(2) + "\n";
}

}  // namespace evcp
