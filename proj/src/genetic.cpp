#include "evcp/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "evcp/error.hpp"
#include "evcp/io.hpp"
#include "evcp/random.hpp"

namespace evcp {

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 1) throw InvalidConfig("population_size must be positive");
    if (cfg.generations < 0) throw InvalidConfig("generations must be non-negative");
    if (cfg.tournament_size < 2 || cfg.tournament_size > cfg.population_size) {
        throw InvalidConfig("tournament_size must lie in [2, population_size]");
    }
    if (!(cfg.crossover_rate >= 0.0 && cfg.crossover_rate <= 1.0)) {
        throw InvalidConfig("crossover_rate must lie in [0, 1]");
    }
    if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) {
        throw InvalidConfig("mutation_rate must lie in [0, 1]");
    }
    if (cfg.mutation_sigma && !(*cfg.mutation_sigma > 0.0 && std::isfinite(*cfg.mutation_sigma))) {
        throw InvalidConfig("mutation_sigma must be positive");
    }
    if (cfg.elitism_count < 1 || cfg.elitism_count >= cfg.population_size) {
        throw InvalidConfig("elitism_count must lie in [1, population_size)");
    }
    if (!(cfg.seed_fraction >= 0.0 && cfg.seed_fraction <= 1.0)) {
        throw InvalidConfig("seed_fraction must lie in [0, 1]");
    }
}

double resolved_sigma(const GaConfig& cfg, const GridInstance& inst) {
    if (cfg.mutation_sigma) return *cfg.mutation_sigma;
    return 0.05 * std::max(inst.width, inst.height);
}

Point GeneBounds::clamp(Point p) const {
    return {std::clamp(p.x, 0.0, x_max), std::clamp(p.y, 0.0, y_max)};
}

bool GeneBounds::contains(Point p) const {
    return p.x >= 0.0 && p.x <= x_max && p.y >= 0.0 && p.y <= y_max;
}

GeneBounds gene_bounds(const GridInstance& inst) {
    return {static_cast<double>(inst.width - 1), static_cast<double>(inst.height - 1)};
}

namespace {

Point uniform_point(const GeneBounds& b, Rng& rng) {
    std::uniform_real_distribution<double> ux(0.0, b.x_max);
    std::uniform_real_distribution<double> uy(0.0, b.y_max);
    const double x = ux(rng);
    return {x, uy(rng)};
}

Individual make_individual(std::vector<Point> genes, const GridInstance& inst) {
    Individual ind;
    ind.fitness = run_score(genes, inst);
    ind.genes = std::move(genes);
    return ind;
}

std::size_t argmin_fitness(const Population& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].fitness < pop[best].fitness) best = i;
    }
    return best;
}

}  // namespace

Population init_population(const GridInstance& inst, const GaConfig& cfg,
                           std::span<const Placement> seeds) {
    validate(cfg);
    const auto m = static_cast<std::size_t>(inst.new_charger_count);
    for (const auto& s : seeds) {
        if (s.coords.size() != m) {
            throw SeedShapeMismatch("seed has " + std::to_string(s.coords.size()) +
                                    " chargers, instance needs " + std::to_string(m));
        }
    }
    const GeneBounds bounds = gene_bounds(inst);
    const double sigma = resolved_sigma(cfg, inst);
    Rng rng = make_rng(cfg.rng_seed, 0, StreamTag::ga_init);
    std::normal_distribution<double> noise(0.0, sigma);

    std::vector<const Placement*> distinct;
    for (const auto& s : seeds) {
        const bool dup = std::any_of(distinct.begin(), distinct.end(),
                                     [&](const Placement* d) { return d->coords == s.coords; });
        if (!dup) distinct.push_back(&s);
    }

    const auto size = static_cast<std::size_t>(cfg.population_size);
    std::size_t seed_slots = 0;
    if (!seeds.empty()) {
        seed_slots = static_cast<std::size_t>(std::floor(cfg.seed_fraction * cfg.population_size));
        seed_slots = std::min(size, std::max(seed_slots, distinct.size()));
    }

    Population pop;
    pop.reserve(size);
    for (std::size_t i = 0; i < distinct.size() && pop.size() < seed_slots; ++i) {
        std::vector<Point> genes;
        for (const auto& c : distinct[i]->coords) genes.push_back(bounds.clamp(c));
        pop.push_back(make_individual(std::move(genes), inst));
    }
    for (std::size_t k = 0; pop.size() < seed_slots; ++k) {
        const Placement& s = seeds[k % seeds.size()];
        std::vector<Point> genes;
        for (const auto& c : s.coords) {
            const double dx = noise(rng);
            genes.push_back(bounds.clamp({c.x + dx, c.y + noise(rng)}));
        }
        pop.push_back(make_individual(std::move(genes), inst));
    }
    while (pop.size() < size) {
        std::vector<Point> genes;
        for (std::size_t k = 0; k < m; ++k) genes.push_back(uniform_point(bounds, rng));
        pop.push_back(make_individual(std::move(genes), inst));
    }
    return pop;
}

EvolveResult evolve(const GridInstance& inst, const GaConfig& cfg, Population population) {
    validate(cfg);
    if (population.size() != static_cast<std::size_t>(cfg.population_size)) {
        throw InvalidConfig("population has " + std::to_string(population.size()) +
                            " individuals, config expects " + std::to_string(cfg.population_size));
    }
    const auto m = static_cast<std::size_t>(inst.new_charger_count);
    for (auto& ind : population) {
        if (ind.genes.size() != m) {
            throw SeedShapeMismatch("individual does not carry exactly m chargers");
        }
        ind.fitness = run_score(ind.genes, inst);
    }

    const GeneBounds bounds = gene_bounds(inst);
    const double sigma = resolved_sigma(cfg, inst);
    Rng rng = make_rng(cfg.rng_seed, 0, StreamTag::ga_evolve);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    std::normal_distribution<double> noise(0.0, sigma);

    auto tournament = [&](const Population& pop) {
        std::size_t winner = pick(rng);
        for (int t = 1; t < cfg.tournament_size; ++t) {
            const std::size_t c = pick(rng);
            if (pop[c].fitness < pop[winner].fitness ||
                (pop[c].fitness == pop[winner].fitness && c < winner)) {
                winner = c;
            }
        }
        return winner;
    };

    EvolveResult result;
    auto& history = result.history.best_fitness_per_generation;
    history.reserve(static_cast<std::size_t>(cfg.generations) + 1);
    result.best = population[argmin_fitness(population)];
    history.push_back(result.best.fitness);

    std::vector<std::size_t> order(population.size());
    Population next;
    next.reserve(population.size());
    for (int g = 1; g <= cfg.generations; ++g) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return population[a].fitness < population[b].fitness;
        });

        next.clear();
        for (int e = 0; e < cfg.elitism_count; ++e) next.push_back(population[order[e]]);

        while (next.size() < population.size()) {
            const Individual& mother = population[tournament(population)];
            const Individual& father = population[tournament(population)];
            std::vector<Point> genes = mother.genes;
            if (unit(rng) < cfg.crossover_rate) {
                for (std::size_t k = 0; k < m; ++k) {
                    if (unit(rng) < 0.5) genes[k] = father.genes[k];
                }
            }
            for (auto& p : genes) {
                if (unit(rng) < cfg.mutation_rate) p.x += noise(rng);
                if (unit(rng) < cfg.mutation_rate) p.y += noise(rng);
                p = bounds.clamp(p);
            }
            next.push_back(make_individual(std::move(genes), inst));
        }
        population.swap(next);

        const std::size_t best = argmin_fitness(population);
        if (population[best].fitness < result.best.fitness) result.best = population[best];
        history.push_back(population[best].fitness);
    }
    return result;
}

void write_history_text(const GaHistory& history, std::ostream& out) {
    const auto& h = history.best_fitness_per_generation;
    for (std::size_t g = 0; g < h.size(); ++g) {
        out << g << " " << io::format_double(h[g]) << "\n";
    }
}

}  // namespace evcp
