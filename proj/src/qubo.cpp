#include "evcp/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "evcp/error.hpp"
#include "evcp/io.hpp"

namespace evcp {

LambdaParams parse_lambdas(std::string_view text) {
    std::array<double, 4> values{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view field = text.substr(pos, comma - pos);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        if (count == values.size()) {
            throw InvalidConfig("expected exactly four lambdas, got more in '" + std::string(text) + "'");
        }
        double v = 0.0;
        auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
            throw InvalidConfig("malformed lambda '" + std::string(field) + "'");
        }
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidConfig("lambdas must be finite and non-negative, got " + std::string(field));
        }
        values[count++] = v;
        pos = comma + 1;
    }
    if (count != values.size()) {
        throw InvalidConfig("expected exactly four lambdas l1,l2,l3,l4 in '" + std::string(text) + "'");
    }
    return LambdaParams::from_array(values);
}

std::string format_lambdas(const LambdaParams& l) {
    return io::format_double(l.l1) + "," + io::format_double(l.l2) + "," + io::format_double(l.l3) +
           "," + io::format_double(l.l4);
}

// ---------------------------------------------------------------------------
// QuboMatrix

QuboMatrix::QuboMatrix(std::size_t n) : linear_(n, 0.0) {}

QuboMatrix QuboMatrix::geometric(std::vector<double> linear, std::vector<LatticePoint> sites,
                                 double coupling_constant, double distance_weight, double offset) {
    if (linear.size() != sites.size()) {
        throw LengthMismatch("geometric QUBO needs one site per variable");
    }
    QuboMatrix q;
    q.linear_ = std::move(linear);
    q.sites_ = std::move(sites);
    q.coupling_constant_ = coupling_constant;
    q.distance_weight_ = distance_weight;
    q.offset_ = offset;
    return q;
}

std::size_t QuboMatrix::packed_index(std::size_t i, std::size_t j) const {
    // Row i holds entries j = i+1 .. n-1.
    const std::size_t n = size();
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

double QuboMatrix::coefficient(std::size_t i, std::size_t j) const {
    if (i > j) {
        throw std::out_of_range("QUBO coefficients are upper triangular (i <= j)");
    }
    if (i == j) {
        return linear_[i];
    }
    return coupling(i, j);
}

double QuboMatrix::coupling(std::size_t i, std::size_t j) const {
    if (i == j) {
        return 0.0;
    }
    if (i > j) {
        std::swap(i, j);
    }
    double v = dense_.empty() ? 0.0 : dense_[packed_index(i, j)];
    if (has_geometric_couplers()) {
        v += coupling_constant_ +
             distance_weight_ * squared_distance(Point(sites_[i]), Point(sites_[j]));
    }
    return v;
}

double QuboMatrix::explicit_coupling(std::size_t i, std::size_t j) const {
    if (i == j || dense_.empty()) {
        return 0.0;
    }
    if (i > j) {
        std::swap(i, j);
    }
    return dense_[packed_index(i, j)];
}

void QuboMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i > j || j >= size()) {
        throw std::out_of_range("QUBO entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is not in the upper triangle");
    }
    if (i == j) {
        linear_[i] = value;
        return;
    }
    if (dense_.empty()) {
        const std::size_t n = size();
        dense_.assign(n * (n - 1) / 2, 0.0);
    }
    dense_[packed_index(i, j)] = value;
}

void QuboMatrix::set_site_index(std::vector<LatticePoint> sites) {
    if (sites.size() != size()) {
        throw LengthMismatch("site index length differs from variable count");
    }
    if (has_geometric_couplers()) {
        throw InvalidConfig("cannot replace the sites of a geometric QUBO");
    }
    sites_ = std::move(sites);
}

double QuboMatrix::max_abs_coefficient() const {
    double m = 0.0;
    for (double v : linear_) m = std::max(m, std::abs(v));
    if (!dense_.empty() && !has_geometric_couplers()) {
        for (double v : dense_) m = std::max(m, std::abs(v));
    } else if (size() > 1 && (has_geometric_couplers() || !dense_.empty())) {
        // Bound |c + w d^2| over the site bounding box, plus the dense part.
        int xmin = sites_.front().x, xmax = xmin, ymin = sites_.front().y, ymax = ymin;
        for (const auto& s : sites_) {
            xmin = std::min(xmin, s.x);
            xmax = std::max(xmax, s.x);
            ymin = std::min(ymin, s.y);
            ymax = std::max(ymax, s.y);
        }
        const double dx = xmax - xmin;
        const double dy = ymax - ymin;
        const double d2max = dx * dx + dy * dy;
        double dense_max = 0.0;
        for (double v : dense_) dense_max = std::max(dense_max, std::abs(v));
        const double geo = std::max(std::abs(coupling_constant_),
                                    std::abs(coupling_constant_ + distance_weight_ * d2max));
        m = std::max(m, geo + dense_max);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Terms

std::vector<double> poi_term(const GridInstance& inst, std::span<const LatticePoint> sites) {
    std::vector<double> out(sites.size(), 0.0);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (const auto& poi : inst.pois) {
            out[i] += squared_distance(Point(poi), Point(sites[i]));
        }
    }
    return out;
}

std::vector<double> entropy_poi_term(const GridInstance& inst, std::span<const LatticePoint> sites,
                                     const QuboConfig& cfg) {
    if (inst.pois.empty()) {
        throw ZeroPOIs("entropy of the POI distance distribution is undefined without POIs");
    }
    if (!(cfg.softmax_temperature > 0.0) || !std::isfinite(cfg.softmax_temperature)) {
        throw InvalidConfig("softmax temperature must be positive and finite");
    }
    if (cfg.entropy_sign != 1 && cfg.entropy_sign != -1) {
        throw InvalidConfig("entropy_sign must be +1 or -1");
    }
    const double inv_t = 1.0 / cfg.softmax_temperature;
    std::vector<double> logits(inst.pois.size());
    std::vector<double> out(sites.size(), 0.0);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < inst.pois.size(); ++k) {
            logits[k] = -distance(Point(inst.pois[k]), Point(sites[i])) * inv_t;
            top = std::max(top, logits[k]);
        }
        double z = 0.0;
        for (double a : logits) z += std::exp(a - top);
        const double log_z = std::log(z);
        double plogp = 0.0;
        for (double a : logits) {
            const double log_p = a - top - log_z;
            plogp += std::exp(log_p) * log_p;
        }
        out[i] = cfg.entropy_sign * plogp;
    }
    return out;
}

std::vector<double> old_charger_term(const GridInstance& inst, std::span<const LatticePoint> sites) {
    std::vector<double> out(sites.size(), 0.0);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (const auto& c : inst.old_chargers) {
            out[i] += squared_distance(Point(c), Point(sites[i]));
        }
    }
    return out;
}

PairwiseSquaredDistances pairwise_term(std::span<const LatticePoint> sites) {
    return PairwiseSquaredDistances({sites.begin(), sites.end()});
}

TermVectors compute_terms(const GridInstance& inst, std::span<const LatticePoint> sites,
                          const QuboConfig& cfg) {
    return TermVectors{
        cfg.use_entropy ? entropy_poi_term(inst, sites, cfg) : poi_term(inst, sites),
        old_charger_term(inst, sites),
        pairwise_term(sites),
    };
}

QuboMatrix build_qubo(const GridInstance& inst, std::span<const LatticePoint> sites,
                      const LambdaParams& lambdas, const QuboConfig& cfg) {
    for (double l : lambdas.as_array()) {
        if (!std::isfinite(l) || l < 0.0) {
            throw InvalidConfig("lambdas must be finite and non-negative");
        }
    }
    if (sites.empty()) {
        throw NoCandidates("cannot build a QUBO over zero candidate sites");
    }
    const TermVectors terms = compute_terms(inst, sites, cfg);
    const double m = inst.new_charger_count;

    // l4 (sum x - m)^2 = l4 [sum x_i (1 - 2m) + 2 sum_{i<j} x_i x_j + m^2]
    std::vector<double> linear(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        linear[i] = lambdas.l1 * terms.d_poi[i] - lambdas.l2 * terms.d_old[i] +
                    lambdas.l4 * (1.0 - 2.0 * m);
        if (!std::isfinite(linear[i])) {
            throw InvalidConfig("non-finite QUBO coefficient at site " + std::to_string(i));
        }
    }
    return QuboMatrix::geometric(std::move(linear), {sites.begin(), sites.end()}, 2.0 * lambdas.l4,
                                 -lambdas.l3, lambdas.l4 * m * m);
}

double energy(const QuboMatrix& q, std::span<const std::uint8_t> x) {
    if (x.size() != q.size()) {
        throw LengthMismatch("bit vector has " + std::to_string(x.size()) + " entries, QUBO has " +
                             std::to_string(q.size()));
    }
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) on.push_back(i);
    }
    double e = q.offset();
    for (std::size_t i : on) e += q.linear(i);

    if (q.has_dense_couplers()) {
        for (std::size_t a = 0; a < on.size(); ++a) {
            for (std::size_t b = a + 1; b < on.size(); ++b) {
                e += q.coupling(on[a], on[b]);
            }
        }
        return e;
    }
    if (q.has_geometric_couplers() && on.size() > 1) {
        // sum_{i<j} |p_i - p_j|^2 = k sum |p|^2 - |sum p|^2
        const double k = static_cast<double>(on.size());
        double sx = 0.0, sy = 0.0, sq = 0.0;
        for (std::size_t i : on) {
            const auto& p = q.site_index()[i];
            sx += p.x;
            sy += p.y;
            sq += static_cast<double>(p.x) * p.x + static_cast<double>(p.y) * p.y;
        }
        const double pair_sq = k * sq - (sx * sx + sy * sy);
        e += q.coupling_constant() * k * (k - 1.0) / 2.0 + q.distance_weight() * pair_sq;
    }
    return e;
}

void write_qubo_text(const QuboMatrix& q, std::ostream& out) {
    out << q.size() << " " << io::format_double(q.offset()) << "\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i; j < q.size(); ++j) {
            const double v = q.coefficient(i, j);
            if (v != 0.0) {
                out << i << " " << j << " " << io::format_double(v) << "\n";
            }
        }
    }
}

}  // namespace evcp
