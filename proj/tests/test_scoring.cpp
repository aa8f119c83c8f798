#include <doctest.h>

#include <random>

#include "evcp/error.hpp"
#include "evcp/scoring.hpp"
#include "oracles.hpp"

using namespace evcp;

TEST_CASE("run_score") {
    CHECK(run_score(Placement{{{3, 4}}, Provenance::ga}, GridInstance{10, 10, {{0, 0}}, {}, 1}) == 5.0);
    CHECK(run_score(Placement{{{10, 10}}, Provenance::ga}, GridInstance{11, 11, {{0, 0}}, {{1, 0}}, 1}) == 1.0);
    CHECK(run_score(Placement{{{0, 0}, {4, 4}}, Provenance::ga}, GridInstance{5, 5, {{0, 0}, {4, 4}}, {}, 2}) == 0.0);
    CHECK_THROWS_AS(run_score(Placement{}, GridInstance{5, 5, {{1, 1}}, {}, 1}), NoChargers);
}

TEST_CASE("run_score matches the oracle and its geometric properties") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(0.0, 19.0);
    for (int trial = 0; trial < 50; ++trial) {
        const GridInstance inst = generate_instance({20, 20, 1 + trial % 7, trial % 3, 2, static_cast<std::uint64_t>(trial)});
        std::vector<Point> chargers{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        const double s = run_score(chargers, inst);
        CHECK(s == doctest::Approx(oracle::score(inst, chargers)).epsilon(1e-12));

        // Adding a charger never hurts.
        auto more = chargers;
        more.push_back({coord(rng), coord(rng)});
        CHECK(run_score(more, inst) <= s);

        // Rigid translation of every point.
        GridInstance moved = inst;
        moved.width += 5;
        moved.height += 5;
        for (auto& p : moved.pois) p = {p.x + 5, p.y + 2};
        for (auto& p : moved.old_chargers) p = {p.x + 5, p.y + 2};
        auto moved_chargers = chargers;
        for (auto& p : moved_chargers) p = {p.x + 5, p.y + 2};
        CHECK(run_score(moved_chargers, moved) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("aggregate") {
    const std::vector<double> same{5, 5, 5, 5, 5};
    const ScoreReport a = aggregate(same);
    CHECK(a.mean == 5.0);
    CHECK(a.variance == 0.0);
    CHECK(a.combined == 5.0);

    const std::vector<double> two{1, 3};
    const ScoreReport b = aggregate(two);
    CHECK(b.mean == 2.0);
    CHECK(b.variance == 1.0);
    CHECK(b.combined == 3.0);
    CHECK(b.per_run == two);

    const std::vector<double> single{42.5};
    const ScoreReport c = aggregate(single);
    CHECK(c.mean == 42.5);
    CHECK(c.variance == 0.0);
    CHECK(c.combined == 42.5);

    CHECK_THROWS_AS(aggregate(std::vector<double>{}), EmptyRuns);
}

TEST_CASE("aggregate invariants") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> v(0.0, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> runs(1 + trial % 9);
        for (auto& r : runs) r = v(rng);
        const ScoreReport r = aggregate(runs);
        CHECK(r.variance >= 0.0);
        CHECK(r.combined >= r.mean);
        CHECK(r.combined == r.mean + r.variance);
        const std::vector<double> constant(runs.size(), runs[0]);
        CHECK(aggregate(constant).combined == doctest::Approx(runs[0]).epsilon(1e-15));
    }
}
