#include "evcp/bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "evcp/error.hpp"
#include "evcp/io.hpp"
#include "evcp/random.hpp"

namespace evcp {

namespace {

std::string grid_label(const GridInstance& inst) {
    return label(inst) + " " + std::to_string(inst.width) + "x" + std::to_string(inst.height);
}

int parse_int(const std::string& token, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("suite line " + std::to_string(line_no) + ": '" + token + "' is not an integer");
    }
}

std::string fixed2(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::vector<SuiteEntry> parse_suite(std::string_view text, const std::filesystem::path& base_dir,
                                    std::uint64_t master_seed) {
    std::vector<SuiteEntry> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        const auto where = "suite line " + std::to_string(line_no);
        if (tok[0] == "file") {
            if (tok.size() != 2) throw ParseError(where + ": expected 'file PATH'");
            std::filesystem::path p = tok[1];
            if (p.is_relative()) p = base_dir / p;
            GridInstance inst = load_instance(p);
            entries.push_back({grid_label(inst), std::move(inst)});
        } else if (tok[0] == "generate") {
            if (tok.size() != 5 && tok.size() != 6) {
                throw ParseError(where + ": expected 'generate WxH n_poi n_old n_new [seed]'");
            }
            const auto x = tok[1].find('x');
            if (x == std::string::npos) throw ParseError(where + ": grid must be written WxH");
            InstanceSpec spec;
            spec.width = parse_int(tok[1].substr(0, x), line_no);
            spec.height = parse_int(tok[1].substr(x + 1), line_no);
            spec.n_poi = parse_int(tok[2], line_no);
            spec.n_old = parse_int(tok[3], line_no);
            spec.n_new = parse_int(tok[4], line_no);
            if (tok.size() == 6) {
                try {
                    spec.rng_seed = std::stoull(tok[5]);
                } catch (const std::exception&) {
                    throw ParseError(where + ": bad seed '" + tok[5] + "'");
                }
            } else {
                spec.rng_seed = derive_seed(master_seed, entries.size(), StreamTag::instance);
            }
            GridInstance inst = generate_instance(spec);
            entries.push_back({grid_label(inst), std::move(inst)});
        } else {
            throw ParseError(where + ": unknown directive '" + tok[0] + "'");
        }
    }
    return entries;
}

BenchRow run_bench_row(const SuiteEntry& entry, const BenchConfig& cfg, std::size_t row_index) {
    BenchRow row;
    row.dataset = entry.label;
    row.lambdas = cfg.solve.lambdas;
    row.qa = row.ga = row.hybrid = std::nan("");
    try {
        SolveConfig sc = cfg.solve;
        sc.master_seed = derive_seed(cfg.solve.master_seed, row_index, StreamTag::run);
        if (cfg.tune_budget > 0) {
            TunerConfig tc;
            tc.budget = cfg.tune_budget;
            tc.method = cfg.tune_method;
            tc.rng_seed = sc.master_seed;
            tc.initial_candidates = {cfg.solve.lambdas};
            const auto tuned = tune(entry.instance, tc, cfg.tune_anneal.value_or(sc.anneal), sc.qubo);
            sc.lambdas = tuned.best;
            row.lambdas = tuned.best;
        }

        SolveResult hybrid = solve(entry.instance, Method::hybrid, sc);
        std::vector<double> qa_scores;
        for (const auto& r : hybrid.runs) qa_scores.push_back(*r.annealer_score);
        row.qa_report = aggregate(qa_scores);
        row.qa = row.qa_report.combined;
        row.qa_times.annealer_seconds = hybrid.wall_times.annealer_seconds;
        row.hybrid = hybrid.report.combined;
        row.hybrid_times = hybrid.wall_times;

        SolveResult ga = solve(entry.instance, Method::ga, sc);
        row.ga = ga.report.combined;
        row.ga_times = ga.wall_times;

        row.hybrid_result = std::move(hybrid);
        row.ga_result = std::move(ga);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<SuiteEntry>& suite, const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < suite.size(); ++i) rows.push_back(run_bench_row(suite[i], cfg, i));
    return rows;
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
    BenchSummary s;
    double over_qa = 0.0, over_ga = 0.0;
    std::size_t n_qa = 0, n_ga = 0;
    for (const auto& r : rows) {
        if (r.error) continue;
        ++s.rows_ok;
        if (r.hybrid < r.qa) ++s.hybrid_beats_qa;
        if (r.hybrid < r.ga) ++s.hybrid_beats_ga;
        if (r.qa > 0.0) {
            over_qa += (r.qa - r.hybrid) / r.qa;
            ++n_qa;
        }
        if (r.ga > 0.0) {
            over_ga += (r.ga - r.hybrid) / r.ga;
            ++n_ga;
        }
    }
    s.improvement_over_qa = n_qa ? over_qa / static_cast<double>(n_qa) : 0.0;
    s.improvement_over_ga = n_ga ? over_ga / static_cast<double>(n_ga) : 0.0;
    return s;
}

std::string bench_table_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "dataset,qa,ga,hybrid\n";
    for (const auto& r : rows) {
        os << r.dataset << "," << fixed2(r.qa) << "," << fixed2(r.ga) << "," << fixed2(r.hybrid) << "\n";
    }
    return os.str();
}

std::string bench_summary_text(const std::vector<BenchRow>& rows, const BenchSummary& s) {
    std::ostringstream os;
    os << "datasets: " << rows.size() << " (" << s.rows_ok << " completed)\n";
    os << "mean improvement of hybrid over qa: " << fixed2(100.0 * s.improvement_over_qa) << "%\n";
    os << "mean improvement of hybrid over ga: " << fixed2(100.0 * s.improvement_over_ga) << "%\n";
    os << "hybrid better than qa: " << s.hybrid_beats_qa << "/" << s.rows_ok << "\n";
    os << "hybrid better than ga: " << s.hybrid_beats_ga << "/" << s.rows_ok << "\n";
    for (const auto& r : rows) {
        os << r.dataset << ": lambdas " << format_lambdas(r.lambdas);
        if (r.error) os << " FAILED: " << *r.error;
        os << "\n";
    }
    return os.str();
}

std::string slug(std::string_view label) {
    std::string out;
    for (char c : label) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
            out += c;
        } else if (c == ',' || c == ' ') {
            out += '_';
        }
    }
    return out;
}

}  // namespace evcp
