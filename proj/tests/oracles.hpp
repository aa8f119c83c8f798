#pragma once

// Reference computations that share no code path with the library beyond the
// plain data types. Kept deliberately naive.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "evcp/instance.hpp"
#include "evcp/qubo.hpp"

namespace oracle {

inline double sq(double v) { return v * v; }

inline double d2(evcp::LatticePoint a, evcp::LatticePoint b) { return sq(a.x - b.x) + sq(a.y - b.y); }

/// Per-site POI weight: plain sum of squared distances, or the softmax
/// entropy form written out without any numerical stabilisation.
inline double poi_weight(const evcp::GridInstance& inst, evcp::LatticePoint s, const evcp::QuboConfig& cfg) {
    if (!cfg.use_entropy) {
        double t = 0.0;
        for (auto p : inst.pois) t += d2(p, s);
        return t;
    }
    double z = 0.0;
    for (auto p : inst.pois) z += std::exp(-std::sqrt(d2(p, s)) / cfg.softmax_temperature);
    double h = 0.0;
    for (auto p : inst.pois) {
        const double prob = std::exp(-std::sqrt(d2(p, s)) / cfg.softmax_temperature) / z;
        if (prob > 0.0) h += prob * std::log(prob);
    }
    return cfg.entropy_sign * h;
}

/// l1 H1 + l2 H2 + l3 H3 + l4 (sum x - m)^2, term by term.
inline double hamiltonian(const evcp::GridInstance& inst, const std::vector<evcp::LatticePoint>& sites,
                          const evcp::LambdaParams& l, const evcp::QuboConfig& cfg,
                          const std::vector<std::uint8_t>& x) {
    double h1 = 0.0, h2 = 0.0, h3 = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!x[i]) continue;
        ++count;
        h1 += poi_weight(inst, sites[i], cfg);
        double dc = 0.0;
        for (auto c : inst.old_chargers) dc += d2(c, sites[i]);
        h2 -= dc;
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            if (x[j]) h3 -= d2(sites[i], sites[j]);
        }
    }
    const double h4 = sq(count - inst.new_charger_count);
    return l.l1 * h1 + l.l2 * h2 + l.l3 * h3 + l.l4 * h4;
}

/// Double loop over the upper triangle through the coefficient accessor.
inline double dense_energy(const evcp::QuboMatrix& q, const std::vector<std::uint8_t>& x) {
    double e = q.offset();
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i; j < q.size(); ++j) {
            if (x[i] && x[j]) e += q.coefficient(i, j);
        }
    }
    return e;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t mask, std::size_t n) {
    std::vector<std::uint8_t> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U;
    return x;
}

/// Exhaustive minimum over all 2^n assignments.
inline double min_over_all_states(std::size_t n, const std::function<double(const std::vector<std::uint8_t>&)>& f) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        best = std::min(best, f(bits_of(mask, n)));
    }
    return best;
}

/// Sum over POIs of the distance to the nearest charger.
inline double score(const evcp::GridInstance& inst, const std::vector<evcp::Point>& chargers) {
    double total = 0.0;
    for (auto p : inst.pois) {
        double best = std::numeric_limits<double>::infinity();
        for (auto c : inst.old_chargers) best = std::min(best, std::hypot(p.x - c.x, p.y - c.y));
        for (auto c : chargers) best = std::min(best, std::hypot(p.x - c.x, p.y - c.y));
        total += best;
    }
    return total;
}

/// Best single-charger score over a regular grid of positions.
inline double fine_grid_single_charger(const evcp::GridInstance& inst, double step) {
    double best = std::numeric_limits<double>::infinity();
    const int nx = static_cast<int>(std::lround((inst.width - 1) / step));
    const int ny = static_cast<int>(std::lround((inst.height - 1) / step));
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            best = std::min(best, score(inst, {{i * step, j * step}}));
        }
    }
    return best;
}

/// Best score over all m-subsets of lattice candidate sites.
inline std::pair<double, std::vector<evcp::Point>> best_lattice_placement(
    const evcp::GridInstance& inst, const std::vector<evcp::LatticePoint>& sites) {
    const int m = inst.new_charger_count;
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::pair<double, std::vector<evcp::Point>> best{std::numeric_limits<double>::infinity(), {}};
    std::function<void(int, int)> rec = [&](int depth, int start) {
        if (depth == m) {
            std::vector<evcp::Point> pts;
            for (int k : idx) pts.emplace_back(sites[static_cast<std::size_t>(k)]);
            const double s = score(inst, pts);
            if (s < best.first) best = {s, pts};
            return;
        }
        for (int k = start; k < static_cast<int>(sites.size()); ++k) {
            idx[static_cast<std::size_t>(depth)] = k;
            rec(depth + 1, k + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace oracle
