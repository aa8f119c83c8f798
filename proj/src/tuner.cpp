#include "evcp/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include <Eigen/Dense>
#include <json.hpp>

#include "evcp/error.hpp"
#include "evcp/hybrid.hpp"
#include "evcp/io.hpp"
#include "evcp/random.hpp"

namespace evcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Unit = std::array<double, 4>;  // log-lambda rescaled to [0,1]^4

LambdaParams from_unit(const Unit& u, const TunerConfig& cfg) {
    std::array<double, 4> l{};
    for (std::size_t d = 0; d < 4; ++d) {
        const double lo = std::log(cfg.bounds[d].first);
        const double hi = std::log(cfg.bounds[d].second);
        l[d] = std::exp(lo + u[d] * (hi - lo));
    }
    return LambdaParams::from_array(l);
}

Unit to_unit(const LambdaParams& lambdas, const TunerConfig& cfg) {
    const auto l = lambdas.as_array();
    Unit u{};
    for (std::size_t d = 0; d < 4; ++d) {
        const double lo = std::log(cfg.bounds[d].first);
        const double hi = std::log(cfg.bounds[d].second);
        const double v = l[d] > 0.0 ? std::log(l[d]) : lo;
        u[d] = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    }
    return u;
}

Unit random_unit(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Unit u{};
    for (auto& v : u) v = unit(rng);
    return u;
}

/// Zero-mean GP with a squared-exponential kernel on standardised targets.
class GaussianProcess {
public:
    static std::optional<GaussianProcess> fit(const std::vector<Unit>& xs, const std::vector<double>& ys) {
        const auto n = static_cast<Eigen::Index>(xs.size());
        if (n < 2) return std::nullopt;
        double mean = 0.0;
        for (double y : ys) mean += y;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double y : ys) var += (y - mean) * (y - mean);
        var /= static_cast<double>(n);
        if (!(var > 1e-18)) return std::nullopt;
        const double sd = std::sqrt(var);

        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) y(i) = (ys[static_cast<std::size_t>(i)] - mean) / sd;

        // Length scale by marginal likelihood over a small grid.
        std::optional<GaussianProcess> best;
        double best_lml = -kInf;
        for (double ell : {0.05, 0.1, 0.2, 0.4, 0.8}) {
            GaussianProcess gp;
            gp.xs_ = xs;
            gp.ell_ = ell;
            gp.mean_ = mean;
            gp.sd_ = sd;
            Eigen::MatrixXd k(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    k(i, j) = gp.kernel(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
                }
                k(i, i) += kNoise;
            }
            gp.llt_ = k.llt();
            if (gp.llt_.info() != Eigen::Success) continue;
            gp.alpha_ = gp.llt_.solve(y);
            const Eigen::MatrixXd l = gp.llt_.matrixL();
            const double lml = -0.5 * y.dot(gp.alpha_) - l.diagonal().array().log().sum();
            if (std::isfinite(lml) && lml > best_lml) {
                best_lml = lml;
                best = std::move(gp);
            }
        }
        return best;
    }

    /// Posterior mean and standard deviation in the original target units.
    std::pair<double, double> predict(const Unit& x) const {
        const auto n = static_cast<Eigen::Index>(xs_.size());
        Eigen::VectorXd ks(n);
        for (Eigen::Index i = 0; i < n; ++i) ks(i) = kernel(x, xs_[static_cast<std::size_t>(i)]);
        const double mu = ks.dot(alpha_);
        const Eigen::VectorXd v = llt_.matrixL().solve(ks);
        const double var = std::max(0.0, 1.0 - v.squaredNorm());
        return {mean_ + sd_ * mu, sd_ * std::sqrt(var)};
    }

private:
    static constexpr double kNoise = 1e-6;

    double kernel(const Unit& a, const Unit& b) const {
        double d2 = 0.0;
        for (std::size_t d = 0; d < 4; ++d) d2 += (a[d] - b[d]) * (a[d] - b[d]);
        return std::exp(-0.5 * d2 / (ell_ * ell_));
    }

    std::vector<Unit> xs_;
    double ell_ = 0.2;
    double mean_ = 0.0;
    double sd_ = 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

double expected_improvement(double mu, double sigma, double best) {
    if (sigma <= 1e-12) return std::max(0.0, best - mu);
    const double z = (best - mu) / sigma;
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return (best - mu) * cdf + sigma * pdf;
}

/// Next point by expected improvement, or nullopt when the surrogate cannot
/// be fitted or proposes nothing useful.
std::optional<Unit> propose_bayes(const std::vector<Unit>& xs, const std::vector<double>& scores, Rng& rng) {
    std::vector<Unit> fx;
    std::vector<double> fy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isfinite(scores[i])) {
            fx.push_back(xs[i]);
            fy.push_back(std::log1p(std::max(0.0, scores[i])));
        }
    }
    const auto gp = GaussianProcess::fit(fx, fy);
    if (!gp) return std::nullopt;
    const auto best_it = std::min_element(fy.begin(), fy.end());
    const double best = *best_it;
    const Unit incumbent = fx[static_cast<std::size_t>(best_it - fy.begin())];

    std::normal_distribution<double> jitter(0.0, 0.05);
    std::optional<Unit> arg;
    double best_ei = 0.0;
    auto consider = [&](const Unit& u) {
        const auto [mu, sigma] = gp->predict(u);
        const double ei = expected_improvement(mu, sigma, best);
        if (std::isfinite(ei) && ei > best_ei) {
            best_ei = ei;
            arg = u;
        }
    };
    for (int c = 0; c < 1000; ++c) consider(random_unit(rng));
    for (int c = 0; c < 300; ++c) {
        Unit u = incumbent;
        for (auto& v : u) v = std::clamp(v + jitter(rng), 0.0, 1.0);
        consider(u);
    }
    return arg;
}

}  // namespace

TunerMethod parse_tuner_method(std::string_view text) {
    if (text == "random") return TunerMethod::random;
    if (text == "bayes") return TunerMethod::bayes;
    throw InvalidConfig("unknown tuner method '" + std::string(text) + "' (expected random or bayes)");
}

std::string_view to_string(TunerMethod m) {
    return m == TunerMethod::random ? "random" : "bayes";
}

void validate(const TunerConfig& cfg) {
    if (cfg.budget < 1) throw InvalidConfig("tuner budget must be at least 1");
    if (cfg.runs_per_eval < 1) throw InvalidConfig("runs_per_eval must be at least 1");
    for (const auto& [lo, hi] : cfg.bounds) {
        if (!(lo > 0.0) || !(lo < hi) || !std::isfinite(hi)) {
            throw InvalidConfig("lambda bounds must satisfy 0 < low < high");
        }
    }
}

double evaluate_lambdas(const GridInstance& inst, const LambdaParams& lambdas,
                        const AnnealConfig& anneal_cfg, const QuboConfig& qubo_cfg, int runs,
                        std::uint64_t seed) {
    SolveConfig sc;
    sc.lambdas = lambdas;
    sc.qubo = qubo_cfg;
    sc.anneal = anneal_cfg;
    sc.runs = runs;
    sc.master_seed = seed;
    try {
        return solve(inst, Method::qa, sc).report.combined;
    } catch (const Error&) {
        return kInf;
    }
}

TuneResult tune(const GridInstance& inst, const TunerConfig& cfg, const AnnealConfig& anneal_cfg,
                const QuboConfig& qubo_cfg) {
    validate(cfg);
    Rng rng = make_rng(cfg.rng_seed, 0, StreamTag::tuner);
    const auto budget = static_cast<std::size_t>(cfg.budget);
    const std::size_t initial_random = std::max<std::size_t>(1, budget / 3);

    TuneResult result;
    std::vector<Unit> xs;
    std::vector<double> scores;
    for (std::size_t e = 0; e < budget; ++e) {
        LambdaParams lambdas;
        if (e < cfg.initial_candidates.size()) {
            lambdas = cfg.initial_candidates[e];
        } else if (cfg.method == TunerMethod::bayes && e >= initial_random) {
            auto proposal = propose_bayes(xs, scores, rng);
            if (!proposal) {
                ++result.surrogate_fallbacks;
                proposal = random_unit(rng);
            }
            lambdas = from_unit(*proposal, cfg);
        } else {
            lambdas = from_unit(random_unit(rng), cfg);
        }
        const double score =
            evaluate_lambdas(inst, lambdas, anneal_cfg, qubo_cfg, cfg.runs_per_eval, cfg.rng_seed);
        xs.push_back(to_unit(lambdas, cfg));
        scores.push_back(score);
        result.trace.push_back({lambdas, score});
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
        if (result.trace[i].score < result.trace[best].score) best = i;
    }
    result.best = result.trace[best].lambdas;
    result.best_score = result.trace[best].score;
    return result;
}

void write_trace_text(const std::vector<TraceEntry>& trace, std::ostream& out) {
    for (const auto& t : trace) {
        out << io::format_double(t.lambdas.l1) << " " << io::format_double(t.lambdas.l2) << " "
            << io::format_double(t.lambdas.l3) << " " << io::format_double(t.lambdas.l4) << " "
            << (std::isfinite(t.score) ? io::format_double(t.score) : std::string("inf")) << "\n";
    }
}

std::string lambdas_to_json_text(const LambdaParams& lambdas, double score) {
    nlohmann::json doc = nlohmann::json::object();
    doc["lambdas"] = {lambdas.l1, lambdas.l2, lambdas.l3, lambdas.l4};
    doc["score"] = std::isfinite(score) ? nlohmann::json(score) : nlohmann::json(nullptr);
    return doc.dump(2) + "\n";
}

LambdaParams load_lambdas_file(const std::filesystem::path& path) {
    const std::string text = io::read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    const auto it = doc.find("lambdas");
    if (it == doc.end() || !it->is_array() || it->size() != 4) {
        throw ParseError(path.string() + ": field 'lambdas' must be an array of four numbers");
    }
    std::array<double, 4> l{};
    for (std::size_t d = 0; d < 4; ++d) {
        if (!(*it)[d].is_number()) {
            throw ParseError(path.string() + ": field 'lambdas'[" + std::to_string(d) + "] must be a number");
        }
        l[d] = (*it)[d].get<double>();
        if (!std::isfinite(l[d]) || l[d] < 0.0) {
            throw ValidationError(path.string() + ": lambdas must be finite and non-negative");
        }
    }
    return LambdaParams::from_array(l);
}

}  // namespace evcp
