#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evcp/annealer.hpp"
#include "evcp/genetic.hpp"
#include "evcp/instance.hpp"
#include "evcp/qubo.hpp"
#include "evcp/scoring.hpp"

namespace evcp {

/// The three compared strategies: annealing only, GA only, annealer-seeded GA.
enum class Method { qa, ga, hybrid };

std::string_view to_string(Method m);
/// Throws InvalidMethod for anything other than qa, ga or hybrid.
Method parse_method(std::string_view text);

struct StageTimes {
    double annealer_seconds = 0.0;
    double ga_seconds = 0.0;

    double total() const { return annealer_seconds + ga_seconds; }
};

struct SolveConfig {
    LambdaParams lambdas;
    QuboConfig qubo;
    AnnealConfig anneal;
    /// GA settings; `generations` applies to randomly initialised runs.
    GaConfig ga;
    int seeded_generations = 100;
    int runs = 5;
    std::uint64_t master_seed = 0;
};

/// One repetition of a pipeline.
struct RunRecord {
    double score = 0.0;
    /// Score of the annealer-stage placement (qa and hybrid).
    std::optional<double> annealer_score;
    Placement placement;
    std::optional<GaHistory> history;
    StageTimes times;
};

struct SolveResult {
    Method method = Method::qa;
    /// Placement of the lowest-scoring run, ties to the lower run index.
    Placement placement;
    std::size_t best_run = 0;
    ScoreReport report;
    /// GA history of the best run, when a GA stage ran.
    std::optional<GaHistory> ga_history;
    /// Stage durations summed over all runs.
    StageTimes wall_times;
    std::vector<RunRecord> runs;
};

/// Seeds for run r of a pipeline, derived from (master_seed, r, stage).
AnnealConfig anneal_config_for_run(const SolveConfig& cfg, int run);
GaConfig ga_config_for_run(const SolveConfig& cfg, int run, bool seeded);

/// Repeats the chosen pipeline cfg.runs times and aggregates the scores.
SolveResult solve(const GridInstance& inst, Method method, const SolveConfig& cfg);

/// Result document: method, lambdas, per-run scores, mean, variance, combined,
/// placement, and wall times when `include_times` is set.
std::string result_to_json_text(const SolveResult& result, const LambdaParams& lambdas,
                                bool include_times);

}  // namespace evcp
