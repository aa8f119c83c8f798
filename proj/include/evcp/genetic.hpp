#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "evcp/geometry.hpp"
#include "evcp/instance.hpp"
#include "evcp/scoring.hpp"

namespace evcp {

struct GaConfig {
    int population_size = 100;
    int generations = 1000;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    /// Gaussian step in cell units; unset means 5% of max(width, height).
    std::optional<double> mutation_sigma;
    double mutation_rate = 0.2;
    int elitism_count = 2;
    double seed_fraction = 0.5;
    std::uint64_t rng_seed = 0;
};

/// Throws InvalidConfig if the config breaks its invariants.
void validate(const GaConfig& cfg);

double resolved_sigma(const GaConfig& cfg, const GridInstance& inst);

/// Genes are the continuous positions of the m new chargers; fitness is the
/// single-run score (lower is better).
struct Individual {
    std::vector<Point> genes;
    double fitness = 0.0;
};

using Population = std::vector<Individual>;

struct GaHistory {
    /// Entry g is the best fitness after generation g; entry 0 is the
    /// initial population.
    std::vector<double> best_fitness_per_generation;
};

/// Rectangle spanned by the grid nodes, [0, width-1] x [0, height-1].
struct GeneBounds {
    double x_max = 0.0;
    double y_max = 0.0;

    Point clamp(Point p) const;
    bool contains(Point p) const;
};

GeneBounds gene_bounds(const GridInstance& inst);

/// Builds the starting population. With seeds, floor(seed_fraction * size)
/// slots hold seed material: one exact copy of each distinct seed, the rest
/// Gaussian-perturbed copies cycling through the seed list. All other slots
/// are uniform in the gene bounds. Throws SeedShapeMismatch when a seed does
/// not have exactly m points.
Population init_population(const GridInstance& inst, const GaConfig& cfg,
                           std::span<const Placement> seeds = {});

struct EvolveResult {
    Individual best;
    GaHistory history;
};

/// Elitist generational GA: tournament selection, uniform per-charger
/// crossover, per-coordinate Gaussian mutation clamped to the bounds.
EvolveResult evolve(const GridInstance& inst, const GaConfig& cfg, Population population);

/// Two columns per line: generation and best fitness.
void write_history_text(const GaHistory& history, std::ostream& out);

}  // namespace evcp
