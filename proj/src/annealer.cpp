#include "evcp/annealer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "evcp/error.hpp"
#include "evcp/random.hpp"

namespace evcp {

namespace {

/// Running local fields for single-bit flips. Geometric couplers are summarised
/// by the selected count, coordinate sum and squared-norm sum, so a flip delta
/// costs O(1); explicit couplers keep a per-variable field updated in O(N).
class FlipState {
public:
    FlipState(const QuboMatrix& q, BitVector x) : q_(q), x_(std::move(x)) {
        if (q_.has_dense_couplers()) {
            dense_field_.assign(q_.size(), 0.0);
        }
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (x_[i]) {
                x_[i] = 0;
                apply_flip(i);
            }
        }
    }

    /// Energy change from flipping bit i.
    double delta(std::size_t i) const {
        const double f = q_.linear(i) + field(i);
        return x_[i] ? -f : f;
    }

    void flip(std::size_t i) { apply_flip(i); }

    std::size_t count() const { return count_; }
    const BitVector& bits() const { return x_; }
    BitVector take_bits() && { return std::move(x_); }

private:
    double field(std::size_t i) const {
        double f = dense_field_.empty() ? 0.0 : dense_field_[i];
        if (q_.has_geometric_couplers()) {
            const auto& p = q_.site_index()[i];
            const double px = p.x;
            const double py = p.y;
            const double k = static_cast<double>(count_);
            const double others = k - x_[i];
            // sum_{j selected} |p - p_j|^2; the self term is zero.
            const double d2sum = k * (px * px + py * py) - 2.0 * (px * sum_x_ + py * sum_y_) + sum_sq_;
            f += q_.coupling_constant() * others + q_.distance_weight() * d2sum;
        }
        return f;
    }

    void apply_flip(std::size_t i) {
        const double sign = x_[i] ? -1.0 : 1.0;
        x_[i] ^= 1;
        if (sign > 0) {
            ++count_;
        } else {
            --count_;
        }
        if (q_.has_geometric_couplers()) {
            const auto& p = q_.site_index()[i];
            sum_x_ += sign * p.x;
            sum_y_ += sign * p.y;
            sum_sq_ += sign * (static_cast<double>(p.x) * p.x + static_cast<double>(p.y) * p.y);
        }
        if (!dense_field_.empty()) {
            for (std::size_t j = 0; j < q_.size(); ++j) {
                if (j != i) {
                    dense_field_[j] += sign * q_.explicit_coupling(i, j);
                }
            }
        }
    }

    const QuboMatrix& q_;
    BitVector x_;
    std::vector<double> dense_field_;
    std::size_t count_ = 0;
    double sum_x_ = 0.0;
    double sum_y_ = 0.0;
    double sum_sq_ = 0.0;
};

std::vector<double> beta_schedule(const AnnealConfig& cfg, double scale) {
    std::vector<double> betas(static_cast<std::size_t>(cfg.sweeps_per_read));
    const double ratio = cfg.beta_final / cfg.beta_initial;
    const auto n = betas.size();
    for (std::size_t s = 0; s < n; ++s) {
        const double t = n == 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(n - 1);
        betas[s] = cfg.beta_initial * std::pow(ratio, t) / scale;
    }
    return betas;
}

BitVector anneal_once(const QuboMatrix& q, const std::vector<double>& betas, std::uint64_t seed) {
    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    BitVector x(q.size());
    for (auto& b : x) b = coin(rng) ? 1 : 0;
    FlipState state(q, std::move(x));

    // exp(-50) is below the resolution of the uniform draw.
    constexpr double max_exponent = 50.0;
    const std::size_t n = q.size();
    for (double beta : betas) {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = state.delta(i);
            if (d <= 0.0) {
                state.flip(i);
            } else if (beta * d < max_exponent && unit(rng) < std::exp(-beta * d)) {
                state.flip(i);
            }
        }
    }
    return std::move(state).take_bits();
}

}  // namespace

int SampleSet::total_reads() const {
    int total = 0;
    for (const auto& s : samples) total += s.occurrences;
    return total;
}

void validate(const AnnealConfig& cfg) {
    if (cfg.num_reads < 1) throw InvalidConfig("num_reads must be at least 1");
    if (cfg.sweeps_per_read < 1) throw InvalidConfig("sweeps_per_read must be at least 1");
    if (!(cfg.beta_initial > 0.0) || !(cfg.beta_final >= cfg.beta_initial) ||
        !std::isfinite(cfg.beta_final)) {
        throw InvalidConfig("beta schedule must satisfy 0 < beta_initial <= beta_final");
    }
}

SampleSet sample(const QuboMatrix& q, const AnnealConfig& cfg) {
    validate(cfg);
    const auto reads = static_cast<std::size_t>(cfg.num_reads);
    double scale = 1.0;
    if (cfg.scale_to_problem) {
        const double m = q.max_abs_coefficient();
        if (m > 0.0 && std::isfinite(m)) scale = m;
    }
    const std::vector<double> betas = beta_schedule(cfg, scale);

    std::vector<BitVector> results(reads);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r = next++; r < reads; r = next++) {
            results[r] = anneal_once(q, betas, derive_seed(cfg.rng_seed, r, StreamTag::anneal));
        }
    };
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reads));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    // Merge in read order so the output never depends on scheduling.
    SampleSet ss;
    std::map<BitVector, std::size_t> seen;
    for (auto& bits : results) {
        auto [it, inserted] = seen.try_emplace(bits, ss.samples.size());
        if (inserted) {
            const double e = energy(q, bits);
            ss.samples.push_back(Sample{std::move(bits), e, 1});
        } else {
            ++ss.samples[it->second].occurrences;
        }
    }
    std::stable_sort(ss.samples.begin(), ss.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
    return ss;
}

BitVector repair(BitVector x, std::size_t m, const QuboMatrix& q) {
    if (x.size() != q.size()) {
        throw LengthMismatch("repair: bit vector length differs from QUBO size");
    }
    if (m > q.size()) {
        throw InvalidConfig("repair: cannot select " + std::to_string(m) + " of " +
                            std::to_string(q.size()) + " variables");
    }
    FlipState state(q, std::move(x));
    while (state.count() != m) {
        const std::uint8_t from = state.count() > m ? 1 : 0;
        std::size_t best = q.size();
        double best_delta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (state.bits()[i] != from) continue;
            const double d = state.delta(i);
            if (best == q.size() || d < best_delta) {
                best = i;
                best_delta = d;
            }
        }
        state.flip(best);
    }
    return std::move(state).take_bits();
}

Placement best_placement(const SampleSet& ss, const QuboMatrix& q, std::size_t m) {
    if (ss.empty()) {
        throw EmptySampleSet("no samples to choose a placement from");
    }
    if (q.site_index().size() != q.size()) {
        throw LengthMismatch("QUBO has no site index to map samples to coordinates");
    }
    const BitVector bits = repair(ss.samples.front().bits, m, q);
    Placement p;
    p.provenance = Provenance::annealer;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) p.coords.emplace_back(q.site_index()[i]);
    }
    return p;
}

}  // namespace evcp
