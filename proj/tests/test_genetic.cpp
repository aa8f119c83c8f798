#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "evcp/error.hpp"
#include "evcp/genetic.hpp"
#include "oracles.hpp"

using namespace evcp;

namespace {

bool same_genes(const Individual& a, const std::vector<Point>& genes) { return a.genes == genes; }

}  // namespace

TEST_CASE("init_population with one seed") {
    const GridInstance inst = generate_instance({15, 20, 5, 2, 3, 7});
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.seed_fraction = 0.5;
    const Placement seed{{{1, 2}, {7, 7}, {12, 3}}, Provenance::annealer};
    const Population pop = init_population(inst, cfg, std::vector<Placement>{seed});
    REQUIRE(pop.size() == 10);
    CHECK(same_genes(pop[0], seed.coords));
    const auto exact = std::count_if(pop.begin(), pop.end(), [&](const Individual& i) { return same_genes(i, seed.coords); });
    CHECK(exact == 1);
    // Four perturbed copies stay near the seed; the rest are uniform.
    const double sigma = resolved_sigma(cfg, inst);
    for (int i = 1; i < 5; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(distance(pop[i].genes[k], seed.coords[k]) < 8 * sigma);
        }
    }
    const GeneBounds b = gene_bounds(inst);
    for (const auto& ind : pop) {
        CHECK(ind.genes.size() == 3);
        CHECK(ind.fitness == run_score(ind.genes, inst));
        for (const auto& g : ind.genes) CHECK(b.contains(g));
    }
}

TEST_CASE("init_population without seeds is uniform within bounds") {
    const GridInstance inst = generate_instance({30, 30, 10, 3, 3, 1});
    GaConfig cfg;
    const Population pop = init_population(inst, cfg);
    CHECK(pop.size() == 100);
    const GeneBounds b = gene_bounds(inst);
    double sx = 0;
    for (const auto& ind : pop) {
        for (const auto& g : ind.genes) {
            CHECK(b.contains(g));
            sx += g.x;
        }
    }
    CHECK(sx / 300.0 == doctest::Approx(14.5).epsilon(0.1));
}

TEST_CASE("init_population rejects misshapen seeds") {
    const GridInstance inst = generate_instance({15, 20, 5, 2, 3, 7});
    const Placement bad{{{1, 2}, {7, 7}}, Provenance::annealer};
    CHECK_THROWS_AS(init_population(inst, GaConfig{}, std::vector<Placement>{bad}), SeedShapeMismatch);
}

TEST_CASE("no variation operators keeps identical individuals fixed") {
    const GridInstance inst = generate_instance({10, 10, 4, 1, 2, 3});
    GaConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 30;
    cfg.mutation_rate = 0.0;
    cfg.crossover_rate = 0.0;
    Population pop(12, Individual{{{2, 3}, {6, 6}}, 0.0});
    const EvolveResult r = evolve(inst, cfg, pop);
    const auto& h = r.history.best_fitness_per_generation;
    CHECK(h.size() == 31);
    CHECK(std::all_of(h.begin(), h.end(), [&](double v) { return v == h.front(); }));
}

TEST_CASE("elitism makes the history monotone and keeps genes in bounds") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const GridInstance inst = generate_instance({15, 20, 6, 3, 3, seed});
        GaConfig cfg;
        cfg.generations = 150;
        cfg.elitism_count = 1;
        cfg.rng_seed = seed;
        const EvolveResult r = evolve(inst, cfg, init_population(inst, cfg));
        const auto& h = r.history.best_fitness_per_generation;
        for (std::size_t g = 1; g < h.size(); ++g) CHECK(h[g] <= h[g - 1]);
        CHECK(r.best.fitness == h.back());
        const GeneBounds b = gene_bounds(inst);
        for (const auto& p : r.best.genes) CHECK(b.contains(p));
    }
}

TEST_CASE("fixed seed reproduces the run") {
    const GridInstance inst = generate_instance({15, 20, 5, 3, 3, 12});
    GaConfig cfg;
    cfg.generations = 60;
    cfg.rng_seed = 5;
    const Placement seed{{{1, 2}, {7, 7}, {12, 3}}, Provenance::annealer};
    const auto a = evolve(inst, cfg, init_population(inst, cfg, std::vector<Placement>{seed}));
    const auto b = evolve(inst, cfg, init_population(inst, cfg, std::vector<Placement>{seed}));
    CHECK(a.history.best_fitness_per_generation == b.history.best_fitness_per_generation);
    CHECK(a.best.genes == b.best.genes);
}

TEST_CASE("single charger converges near the fine-grid optimum") {
    // 8x8 grid, 3 POIs, one new charger; oracle scans a 0.05-step grid.
    const GridInstance inst{8, 8, {{1, 1}, {6, 2}, {3, 6}}, {}, 1};
    const double reference = oracle::fine_grid_single_charger(inst, 0.05);
    GaConfig cfg;
    cfg.generations = 1000;
    cfg.rng_seed = 17;
    const EvolveResult r = evolve(inst, cfg, init_population(inst, cfg));
    CHECK(r.best.fitness <= reference * 1.05);
}

TEST_CASE("a seeded GA never ends worse than its best seed") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const GridInstance inst = generate_instance({5, 4, 4, 1, 2, seed});
        const auto [lattice_best, pts] = oracle::best_lattice_placement(inst, candidate_sites(inst));
        GaConfig cfg;
        cfg.generations = 20;
        cfg.rng_seed = seed;
        const Placement p{pts, Provenance::annealer};
        const EvolveResult r = evolve(inst, cfg, init_population(inst, cfg, std::vector<Placement>{p}));
        CHECK(r.best.fitness <= lattice_best + 1e-9);
    }
}

TEST_CASE("history export") {
    GaHistory h{{3.5, 2.0, 2.0}};
    std::ostringstream os;
    write_history_text(h, os);
    CHECK(os.str() == "0 3.5\n1 2\n2 2\n");
}

TEST_CASE("invalid GA configs") {
    GaConfig cfg;
    cfg.elitism_count = 0;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg = {};
    cfg.tournament_size = 1;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg = {};
    cfg.elitism_count = cfg.population_size;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg = {};
    cfg.seed_fraction = 1.5;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
}
