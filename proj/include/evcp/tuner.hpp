#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evcp/annealer.hpp"
#include "evcp/instance.hpp"
#include "evcp/qubo.hpp"

namespace evcp {

enum class TunerMethod { random, bayes };

TunerMethod parse_tuner_method(std::string_view text);
std::string_view to_string(TunerMethod m);

struct TunerConfig {
    int budget = 30;
    /// (low, high) per lambda; samples are log-uniform within them.
    std::array<std::pair<double, double>, 4> bounds{{{1e-3, 1e3}, {1e-3, 1e3}, {1e-3, 1e3}, {1e-3, 1e3}}};
    TunerMethod method = TunerMethod::random;
    int runs_per_eval = 1;
    std::uint64_t rng_seed = 0;
    /// Evaluated first, in order; they count against the budget.
    std::vector<LambdaParams> initial_candidates;
};

void validate(const TunerConfig& cfg);

struct TraceEntry {
    LambdaParams lambdas;
    double score = 0.0;  ///< Combined qa score; +inf when the evaluation failed.
};

struct TuneResult {
    LambdaParams best;
    double best_score = 0.0;
    std::vector<TraceEntry> trace;
    /// Number of bayes proposals that fell back to random sampling.
    int surrogate_fallbacks = 0;
};

/// Combined qa score of one lambda vector, with every evaluation of a tuning
/// session sharing the annealer seeds derived from `seed`.
double evaluate_lambdas(const GridInstance& inst, const LambdaParams& lambdas,
                        const AnnealConfig& anneal_cfg, const QuboConfig& qubo_cfg, int runs,
                        std::uint64_t seed);

/// Budgeted search over the four lambdas minimising the combined qa score.
TuneResult tune(const GridInstance& inst, const TunerConfig& cfg, const AnnealConfig& anneal_cfg,
                const QuboConfig& qubo_cfg);

/// One row per evaluation: "l1 l2 l3 l4 score".
void write_trace_text(const std::vector<TraceEntry>& trace, std::ostream& out);

std::string lambdas_to_json_text(const LambdaParams& lambdas, double score);
LambdaParams load_lambdas_file(const std::filesystem::path& path);

}  // namespace evcp
