#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evcp/hybrid.hpp"
#include "evcp/instance.hpp"
#include "evcp/tuner.hpp"

namespace evcp {

struct SuiteEntry {
    std::string label;  ///< "EVCP(n,o,c) WxH"
    GridInstance instance;
};

/// Parses a suite listing. Each non-blank, non-# line is either
///     generate WxH n_poi n_old n_new [seed]
///     file PATH
/// Relative paths resolve against `base_dir`; generated datasets without an
/// explicit seed derive one from `master_seed` and the line's entry index.
/// Throws ParseError with the offending line number.
std::vector<SuiteEntry> parse_suite(std::string_view text, const std::filesystem::path& base_dir,
                                    std::uint64_t master_seed);

struct BenchConfig {
    SolveConfig solve;           ///< master_seed is the bench seed
    int tune_budget = 0;         ///< > 0 tunes lambdas per dataset first
    TunerMethod tune_method = TunerMethod::bayes;
    std::optional<AnnealConfig> tune_anneal;  ///< annealer for tuning; defaults to solve.anneal
};

struct BenchRow {
    std::string dataset;
    LambdaParams lambdas;
    double qa = 0.0;
    double ga = 0.0;
    double hybrid = 0.0;
    StageTimes qa_times;
    StageTimes ga_times;
    StageTimes hybrid_times;
    std::optional<std::string> error;
    std::optional<SolveResult> ga_result;
    std::optional<SolveResult> hybrid_result;
    ScoreReport qa_report;
};

/// Runs qa, ga and hybrid on one dataset with the repeated-run protocol. The
/// qa figures come from the hybrid pipeline's annealer stage, which uses the
/// same derived seeds as a standalone qa solve. Errors are captured in the row.
BenchRow run_bench_row(const SuiteEntry& entry, const BenchConfig& cfg, std::size_t row_index);

std::vector<BenchRow> run_bench(const std::vector<SuiteEntry>& suite, const BenchConfig& cfg);

struct BenchSummary {
    std::size_t rows_ok = 0;
    double improvement_over_qa = 0.0;  ///< mean of (qa - hybrid) / qa
    double improvement_over_ga = 0.0;  ///< mean of (ga - hybrid) / ga
    std::size_t hybrid_beats_qa = 0;
    std::size_t hybrid_beats_ga = 0;
};

BenchSummary summarize(const std::vector<BenchRow>& rows);

/// "dataset,qa,ga,hybrid" followed by one line per row.
std::string bench_table_csv(const std::vector<BenchRow>& rows);

std::string bench_summary_text(const std::vector<BenchRow>& rows, const BenchSummary& summary);

/// File-name-safe form of a dataset label.
std::string slug(std::string_view label);

}  // namespace evcp
