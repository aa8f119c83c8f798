#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "evcp/cli.hpp"
#include "evcp/instance.hpp"
#include "evcp/io.hpp"
#include "evcp/tuner.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = evcp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "evcp_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

const std::vector<std::string> quick = {"--reads", "10", "--sweeps", "60", "--generations", "60",
                                        "--seeded-generations", "10", "--population", "30"};

std::vector<std::string> with_quick(std::vector<std::string> args) {
    args.insert(args.end(), quick.begin(), quick.end());
    return args;
}

}  // namespace

TEST_CASE("generate writes a loadable instance") {
    const fs::path dir = scratch("generate");
    const auto r = run_cli({"generate", "--grid", "15x20", "--pois", "5", "--old", "2", "--new", "3", "--seed",
                            "1", "--out", (dir / "i.json").string()});
    CHECK(r.code == 0);
    const auto inst = evcp::load_instance(dir / "i.json");
    CHECK(evcp::label(inst) == "EVCP(5,2,3)");
    CHECK(inst.width == 15);
    CHECK(inst.height == 20);

    run_cli({"generate", "--grid", "15x20", "--pois", "5", "--old", "2", "--new", "3", "--seed", "1", "--out",
             (dir / "j.json").string()});
    CHECK(evcp::io::read_file(dir / "i.json") == evcp::io::read_file(dir / "j.json"));
}

TEST_CASE("generate reports an infeasible spec") {
    const fs::path dir = scratch("infeasible");
    const auto r = run_cli({"generate", "--grid", "2x2", "--pois", "9", "--old", "0", "--new", "1", "--seed", "1",
                            "--out", (dir / "i.json").string()});
    CHECK(r.code != 0);
    CHECK(r.err.find("InfeasibleSpec") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "i.json"));
}

TEST_CASE("solve writes result, plot and history") {
    const fs::path dir = scratch("solve");
    run_cli({"generate", "--grid", "15x20", "--pois", "5", "--old", "2", "--new", "3", "--seed", "2", "--out",
             (dir / "i.json").string()});
    const auto r = run_cli(with_quick({"solve", "--instance", (dir / "i.json").string(), "--method", "hybrid",
                                       "--runs", "1", "--out", (dir / "r.json").string(), "--plot",
                                       (dir / "p.svg").string(), "--history", (dir / "h.txt").string(),
                                       "--qubo-dump", (dir / "q.txt").string()}));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("EVCP(5,2,3) hybrid, score of ") != std::string::npos);

    const auto doc = nlohmann::json::parse(evcp::io::read_file(dir / "r.json"));
    CHECK(doc["per_run"].size() == 1);
    CHECK(doc["placement"]["coords"].size() == 3);
    CHECK_FALSE(doc.contains("wall_times"));

    const std::string svg = evcp::io::read_file(dir / "p.svg");
    CHECK(count(svg, "class=\"point") == 5 + 2 + 3);
    CHECK(count(evcp::io::read_file(dir / "h.txt"), "\n") == 11);
    CHECK(evcp::io::read_file(dir / "q.txt").rfind(std::to_string(15 * 20 - 7) + " ", 0) == 0);
}

TEST_CASE("solve is byte-identical for a fixed seed") {
    const fs::path dir = scratch("repeat");
    run_cli({"generate", "--grid", "15x20", "--pois", "6", "--old", "3", "--new", "3", "--seed", "3", "--out",
             (dir / "i.json").string()});
    for (const char* tag : {"a", "b"}) {
        const std::string t = tag;
        REQUIRE(run_cli(with_quick({"solve", "--instance", (dir / "i.json").string(), "--method", "hybrid",
                                    "--runs", "2", "--seed", "9", "--out", (dir / (t + ".json")).string(),
                                    "--plot", (dir / (t + ".svg")).string()}))
                    .code == 0);
    }
    CHECK(evcp::io::read_file(dir / "a.json") == evcp::io::read_file(dir / "b.json"));
    CHECK(evcp::io::read_file(dir / "a.svg") == evcp::io::read_file(dir / "b.svg"));
}

TEST_CASE("solve usage errors") {
    const fs::path dir = scratch("usage");
    run_cli({"generate", "--grid", "8x8", "--pois", "3", "--old", "1", "--new", "2", "--seed", "3", "--out",
             (dir / "i.json").string()});
    CHECK(run_cli({"solve", "--instance", (dir / "i.json").string(), "--method", "tabu", "--out",
                   (dir / "r.json").string()})
              .code != 0);
    CHECK(run_cli({"solve", "--instance", (dir / "missing.json").string(), "--method", "qa", "--out",
                   (dir / "r.json").string()})
              .code != 0);
    CHECK(run_cli({"solve", "--instance", (dir / "i.json").string(), "--method", "qa", "--lambdas", "1,2",
                   "--out", (dir / "r.json").string()})
              .code != 0);
    CHECK(run_cli({}).code != 0);
}

TEST_CASE("tune writes lambdas and trace that solve can reload") {
    const fs::path dir = scratch("tune");
    run_cli({"generate", "--grid", "10x10", "--pois", "5", "--old", "2", "--new", "2", "--seed", "4", "--out",
             (dir / "i.json").string()});
    const auto r = run_cli({"tune", "--instance", (dir / "i.json").string(), "--budget", "1", "--method",
                            "random", "--out", (dir / "l.json").string(), "--reads", "10", "--sweeps", "60"});
    REQUIRE(r.code == 0);
    const std::string trace = evcp::io::read_file(dir / "l.json.trace");
    CHECK(count(trace, "\n") == 1);
    std::istringstream row(trace);
    double v[5];
    for (double& x : v) row >> x;
    CHECK(row);
    CHECK(evcp::load_lambdas_file(dir / "l.json") == evcp::LambdaParams{v[0], v[1], v[2], v[3]});

    CHECK(run_cli(with_quick({"solve", "--instance", (dir / "i.json").string(), "--method", "qa", "--runs", "1",
                              "--lambdas-file", (dir / "l.json").string(), "--out", (dir / "r.json").string()}))
              .code == 0);
}

TEST_CASE("bench") {
    const fs::path dir = scratch("bench");
    evcp::io::write_file_atomic(dir / "empty.suite", "# nothing\n");
    CHECK(run_cli({"bench", "--suite", (dir / "empty.suite").string(), "--out-dir", (dir / "out").string()})
              .code == 2);

    evcp::io::write_file_atomic(dir / "small.suite", "generate 10x10 5 2 2 1\n");
    const auto r = run_cli(with_quick({"bench", "--suite", (dir / "small.suite").string(), "--out-dir",
                                       (dir / "out").string(), "--runs", "2"}));
    REQUIRE(r.code == 0);
    const std::string csv = evcp::io::read_file(dir / "out" / "table.csv");
    CHECK(csv.rfind("dataset,qa,ga,hybrid\n", 0) == 0);
    CHECK(count(csv, "\n") == 2);
    CHECK(fs::exists(dir / "out" / "scores.svg"));
    CHECK(fs::exists(dir / "out" / "summary.txt"));
    CHECK(fs::exists(dir / "out" / "histories" / "EVCP5_2_2_10x10_ga.txt"));
    CHECK_FALSE(fs::exists(dir / "out" / "timings.csv"));
}
