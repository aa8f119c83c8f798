#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "evcp/bench.hpp"
#include "evcp/error.hpp"

using namespace evcp;

TEST_CASE("suite parsing") {
    const char* text =
        "# datasets\n"
        "generate 15x20 5 2 3 11\n"
        "\n"
        "generate 30x30 10 3 3\n";
    const auto suite = parse_suite(text, ".", 4);
    REQUIRE(suite.size() == 2);
    CHECK(suite[0].label == "EVCP(5,2,3) 15x20");
    CHECK(suite[0].instance == generate_instance({15, 20, 5, 2, 3, 11}));
    CHECK(suite[1].label == "EVCP(10,3,3) 30x30");
    CHECK(suite[1].instance.pois.size() == 10);
    CHECK(parse_suite(text, ".", 4)[1].instance == suite[1].instance);
}

TEST_CASE("suite files load relative to the base directory") {
    const auto dir = std::filesystem::temp_directory_path() / "evcp_suite_test";
    std::filesystem::create_directories(dir);
    const GridInstance inst = generate_instance({8, 8, 3, 1, 2, 5});
    save_instance(inst, dir / "a.json");
    const auto suite = parse_suite("file a.json\n", dir, 0);
    REQUIRE(suite.size() == 1);
    CHECK(suite[0].instance == inst);
    CHECK(suite[0].label == "EVCP(3,1,2) 8x8");
}

TEST_CASE("suite parse errors name the line") {
    try {
        parse_suite("generate 15x20 5 2 3\ngenerate 15by20 5 2 3\n", ".", 0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_suite("fly 1 2\n", ".", 0), ParseError);
}

TEST_CASE("summary arithmetic") {
    std::vector<BenchRow> rows(3);
    rows[0].dataset = "a";
    rows[0].qa = 10;
    rows[0].ga = 8;
    rows[0].hybrid = 5;
    rows[1].dataset = "b";
    rows[1].qa = 20;
    rows[1].ga = 10;
    rows[1].hybrid = 15;
    rows[2].dataset = "c";
    rows[2].error = "boom";
    const BenchSummary s = summarize(rows);
    CHECK(s.rows_ok == 2);
    CHECK(s.improvement_over_qa == doctest::Approx((0.5 + 0.25) / 2));
    CHECK(s.improvement_over_ga == doctest::Approx((3.0 / 8 - 0.5) / 2));
    CHECK(s.hybrid_beats_qa == 2);
    CHECK(s.hybrid_beats_ga == 1);

    const std::string csv = bench_table_csv(rows);
    CHECK(csv.rfind("dataset,qa,ga,hybrid\n", 0) == 0);
    CHECK(csv.find("a,10.00,8.00,5.00\n") != std::string::npos);
}

TEST_CASE("slug") {
    CHECK(slug("EVCP(5,2,3) 15x20") == "EVCP5_2_3_15x20");
}

TEST_CASE("a small bench row runs all three methods") {
    BenchConfig cfg;
    cfg.solve.anneal.num_reads = 10;
    cfg.solve.anneal.sweeps_per_read = 60;
    cfg.solve.ga.population_size = 30;
    cfg.solve.ga.generations = 60;
    cfg.solve.seeded_generations = 10;
    cfg.solve.runs = 2;
    cfg.solve.master_seed = 5;
    const auto suite = parse_suite("generate 10x10 5 2 2 1\n", ".", 5);
    const BenchRow row = run_bench_row(suite[0], cfg, 0);
    REQUIRE_FALSE(row.error);
    CHECK(row.hybrid <= row.qa + 1e-12);
    CHECK(std::isfinite(row.ga));
    CHECK(row.qa == row.qa_report.combined);
    REQUIRE(row.hybrid_result);
    for (const auto& r : row.hybrid_result->runs) CHECK(r.score <= *r.annealer_score);
}
