#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "evcp/qubo.hpp"
#include "evcp/scoring.hpp"

namespace evcp {

struct AnnealConfig {
    int num_reads = 200;
    int sweeps_per_read = 1000;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    std::uint64_t rng_seed = 0;
    /// Divide the beta schedule by the largest |q_ij| so the same endpoints
    /// suit any coefficient scale.
    bool scale_to_problem = true;
    /// Worker threads for independent reads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct Sample {
    BitVector bits;
    double energy = 0.0;
    int occurrences = 0;
};

/// Distinct samples in ascending energy order; equal energies keep the order in
/// which the samples were first drawn.
struct SampleSet {
    std::vector<Sample> samples;

    bool empty() const { return samples.empty(); }
    int total_reads() const;
};

/// Throws InvalidConfig if the config breaks its invariants.
void validate(const AnnealConfig& cfg);

/// Independent single-flip Metropolis anneals over a geometric beta schedule.
/// Deterministic for a fixed seed regardless of thread count.
SampleSet sample(const QuboMatrix& q, const AnnealConfig& cfg);

/// Greedily flips the bit with the smallest energy increase (lowest index on
/// ties) until exactly m bits are set.
BitVector repair(BitVector x, std::size_t m, const QuboMatrix& q);

/// Lowest-energy sample repaired to m sites, mapped to coordinates.
Placement best_placement(const SampleSet& ss, const QuboMatrix& q, std::size_t m);

}  // namespace evcp
