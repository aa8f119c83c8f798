#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evcp/geometry.hpp"
#include "evcp/instance.hpp"

namespace evcp {

/// Bit assignment over QUBO variables; one byte per variable, values 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// Weights of the four Hamiltonian terms: POI attraction, old-charger
/// repulsion, new-charger spread and the cardinality penalty.
struct LambdaParams {
    double l1 = 1.0;
    double l2 = 1.0;
    double l3 = 1.0;
    double l4 = 1.0;

    std::array<double, 4> as_array() const { return {l1, l2, l3, l4}; }
    static LambdaParams from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

    friend bool operator==(const LambdaParams&, const LambdaParams&) = default;
};

/// Parses "l1,l2,l3,l4". Throws InvalidConfig on malformed or negative input.
LambdaParams parse_lambdas(std::string_view text);
std::string format_lambdas(const LambdaParams& l);

struct QuboConfig {
    bool use_entropy = true;
    double softmax_temperature = 1.0;
    int entropy_sign = +1;  ///< +1 gives sum P log P, -1 the conventional entropy.
};

/// Upper-triangular QUBO coefficients plus a constant offset.
///
/// Off-diagonal couplers are the sum of two parts: an optional dense packed
/// table of explicit entries, and a geometric part
///     coupling_constant + distance_weight * |site_i - site_j|^2
/// that is evaluated on demand from site_index. Charger-placement QUBOs are
/// fully geometric, which keeps memory at O(N) for grids with ~10^4 sites.
class QuboMatrix {
public:
    QuboMatrix() = default;

    /// Zero matrix over n variables with no site mapping.
    explicit QuboMatrix(std::size_t n);

    /// Purely geometric matrix: diagonal from `linear`, every coupler from the
    /// site geometry. `sites.size()` must equal `linear.size()`.
    static QuboMatrix geometric(std::vector<double> linear, std::vector<LatticePoint> sites,
                                double coupling_constant, double distance_weight, double offset);

    std::size_t size() const { return linear_.size(); }
    double offset() const { return offset_; }
    void set_offset(double offset) { offset_ = offset; }

    /// q_ii.
    double linear(std::size_t i) const { return linear_[i]; }
    std::span<const double> linear() const { return linear_; }

    /// q_ij for i <= j (i == j gives the diagonal).
    double coefficient(std::size_t i, std::size_t j) const;

    /// Sets the explicit part of q_ij, i <= j. Throws std::out_of_range if i > j.
    void set(std::size_t i, std::size_t j, double value);

    /// Symmetric view of the coupler between two distinct variables.
    double coupling(std::size_t i, std::size_t j) const;

    /// Only the explicitly stored part of the coupler, without geometry.
    double explicit_coupling(std::size_t i, std::size_t j) const;

    const std::vector<LatticePoint>& site_index() const { return sites_; }
    bool has_dense_couplers() const { return !dense_.empty(); }
    bool has_geometric_couplers() const {
        return coupling_constant_ != 0.0 || distance_weight_ != 0.0;
    }
    double coupling_constant() const { return coupling_constant_; }
    double distance_weight() const { return distance_weight_; }

    /// Largest |q_ij| over all entries (an upper bound for geometric couplers).
    double max_abs_coefficient() const;

    /// Attaches a site mapping to a matrix built entry by entry.
    void set_site_index(std::vector<LatticePoint> sites);

private:
    std::size_t packed_index(std::size_t i, std::size_t j) const;

    std::vector<double> linear_;
    std::vector<double> dense_;  // off-diagonal, packed row-major upper triangle
    std::vector<LatticePoint> sites_;
    double coupling_constant_ = 0.0;
    double distance_weight_ = 0.0;
    double offset_ = 0.0;
};

/// Squared Euclidean distances between candidate sites, computed on demand.
class PairwiseSquaredDistances {
public:
    explicit PairwiseSquaredDistances(std::vector<LatticePoint> sites) : sites_(std::move(sites)) {}
    std::size_t size() const { return sites_.size(); }
    double operator()(std::size_t i, std::size_t j) const {
        return squared_distance(Point(sites_[i]), Point(sites_[j]));
    }

private:
    std::vector<LatticePoint> sites_;
};

/// Per-candidate inputs to the Hamiltonian.
struct TermVectors {
    std::vector<double> d_poi;
    std::vector<double> d_old;
    PairwiseSquaredDistances pairwise;
};

/// Sum over POIs of the squared distance to each site.
std::vector<double> poi_term(const GridInstance& inst, std::span<const LatticePoint> sites);

/// Per site: entropy_sign * sum_k P_k log P_k with P the softmax of
/// -distance(POI_k, site) / T. Throws ZeroPOIs when the instance has no POIs.
std::vector<double> entropy_poi_term(const GridInstance& inst, std::span<const LatticePoint> sites,
                                     const QuboConfig& cfg);

/// Sum over existing chargers of the squared distance to each site.
std::vector<double> old_charger_term(const GridInstance& inst, std::span<const LatticePoint> sites);

PairwiseSquaredDistances pairwise_term(std::span<const LatticePoint> sites);

TermVectors compute_terms(const GridInstance& inst, std::span<const LatticePoint> sites,
                          const QuboConfig& cfg);

/// Weighted QUBO of the four terms with the squared cardinality penalty
/// l4 * (sum x - m)^2 expanded into coefficients and offset.
QuboMatrix build_qubo(const GridInstance& inst, std::span<const LatticePoint> sites,
                      const LambdaParams& lambdas, const QuboConfig& cfg);

/// offset + sum_{i<=j} q_ij x_i x_j. Throws LengthMismatch if |x| != n.
double energy(const QuboMatrix& q, std::span<const std::uint8_t> x);

/// Text dump: header "N offset", then one "i j q_ij" line per nonzero entry.
void write_qubo_text(const QuboMatrix& q, std::ostream& out);

}  // namespace evcp
