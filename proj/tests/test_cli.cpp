#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hpart/cli.hpp"
#include "hpart/json_io.hpp"

using namespace hpart;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("hpart_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

std::string constructed(const std::string& name, const std::vector<std::string>& params) {
    const std::string path = scratch(name + ".json");
    std::vector<std::string> args{"construct", "--id", name, "--out", path, "--quiet"};
    args.insert(args.end(), params.begin(), params.end());
    REQUIRE(run(args).code == exit_ok);
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check parity(5) against odd cycles exits 0") {
    const auto r = run({"check", "--graph", constructed("parity", {"--r", "5"}), "--family", "oddcycles"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("free") != std::string::npos);
}

TEST_CASE("check two_colour(4) against trees:4 exits 1 with a witness") {
    const auto r = run({"check", "--graph", constructed("two_colour", {"--r", "4"}), "--family", "trees:4"});
    CHECK(r.code == exit_violated);
    CHECK(r.out.find("\"indices\":[0,0,0,0]") != std::string::npos);
    CHECK(r.out.find("\"3\":\"1\"") != std::string::npos);
}

TEST_CASE("thresholds rho_b 4") {
    const auto r = run({"thresholds", "--id", "rho_b", "--r", "4"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("0.300944") != std::string::npos);
    CHECK(r.out.find("# hpart 1.0.0 seed=0 command: thresholds --id rho_b --r 4") == 0);
}

TEST_CASE("other threshold forms") {
    CHECK(run({"thresholds", "--id", "tree", "--tree", "P4"}).out.find("0.618033988749895") != std::string::npos);
    CHECK(run({"thresholds", "--id", "dirac_pstar", "--r", "4"}).code == exit_ok);
    CHECK(run({"thresholds", "--id", "k4mp3"}).out.find("0.535898384862246") != std::string::npos);
    CHECK(run({"thresholds", "--id", "rho_b", "--r", "2"}).code == exit_input_error);
    CHECK(run({"thresholds", "--id", "nope"}).code == exit_input_error);
}

TEST_CASE("unknown verbs and flags are rejected") {
    CHECK(run({"frobnicate"}).code == exit_input_error);
    CHECK(run({"validate", "--graph", "x.json", "--bogus"}).code == exit_input_error);
    CHECK(run({}).code == exit_input_error);
    CHECK(run({"--version"}).out == std::string(version) + "\n");
}

TEST_CASE("malformed JSON reports line and column") {
    const std::string path = scratch("bad.json");
    std::ofstream(path) << "{\n\"host\": }";
    const auto r = run({"validate", "--graph", path});
    CHECK(r.code == exit_input_error);
    CHECK(r.err.find(path + ":2:") != std::string::npos);
    CHECK(run({"validate", "--graph", scratch("missing.json")}).code == exit_input_error);
}

TEST_CASE("validate reports violations") {
    const std::string path = scratch("stray.json");
    std::ofstream(path) << R"({"host":{"n":3,"edges":[[0,1],[1,2]]},
        "parts":{"0":[{"id":"a","w":0.9}],"1":[{"id":"b","w":1}],"2":[{"id":"c","w":1}]},
        "edges":[[["0","a"],["2","c"]]]})";
    const auto r = run({"validate", "--graph", path, "--quiet"});
    CHECK(r.code == exit_violated);
    const Json j = Json::parse(r.out);
    CHECK(j["valid"] == false);
    CHECK(j["violations"].size() == 2);
    CHECK(run({"density", "--graph", path}).code == exit_input_error);
}

TEST_CASE("invariant: construct output validates") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
        {"star_leaf", {"--r", "5"}},        {"leila", {"--r", "6"}},
        {"missing_edge", {"--r", "6", "--matching", "2-3,4-5"}},
        {"two_colour", {"--r", "5"}},       {"parity", {"--r", "4"}},
        {"refined_dead_end", {"--r", "5"}}, {"pendant_triangle", {}},
        {"intersecting_palette", {"--t", "2", "--r", "7"}},
        {"hypercube_layers", {"--d", "3"}}, {"leila", {"--r", "4", "--alpha", "0.25"}},
        {"refined_dead_end", {"--r", "4", "--p1", "0.6", "--p2", "0.7", "--p3", "0.3"}}};
    for (const auto& [name, params] : cases) {
        CAPTURE(name);
        CHECK(run({"validate", "--graph", constructed(name, params)}).code == exit_ok);
    }
    CHECK(run({"construct", "--id", "leila", "--r", "2"}).code == exit_input_error);
    CHECK(run({"construct", "--id", "nope"}).code == exit_input_error);
}

TEST_CASE("construct without --out prints JSON only") {
    const auto r = run({"construct", "--id", "parity", "--r", "3"});
    CHECK(r.code == exit_ok);
    const Json j = Json::parse(r.out);
    CHECK(j["meta"]["version"] == version);
    CHECK(j.contains("host"));
}

TEST_CASE("verify-construction for single specs") {
    CHECK(run({"verify-construction", "--id", "star_leaf", "--r", "4"}).code == exit_ok);
    CHECK(run({"verify-construction", "--id", "pendant_triangle"}).code == exit_ok);
    CHECK(run({"verify-construction", "--id", "intersecting_palette", "--t", "2", "--r", "6"}).code == exit_ok);
}

TEST_CASE("report-table reproduces the printed values") {
    const auto r = run({"report-table", "--quiet"});
    CHECK(r.code == exit_ok);
    const Json j = Json::parse(r.out);
    CHECK(j["rows"].size() == 8);
    for (const auto& row : j["rows"]) CHECK(row["matches_printed"] == true);
}

TEST_CASE("search output re-checks with check") {
    const std::string path = scratch("k3.json");
    const auto r = run({"search", "--host", "builtin:K3", "--family", "clique:3", "--caps", "2,2,2", "--mode",
                        "exhaustive", "--out", path, "--jobs", "1"});
    CHECK(r.code == exit_ok);
    CHECK(run({"check", "--graph", path, "--family", "clique:3"}).code == exit_ok);
    CHECK(run({"validate", "--graph", path}).code == exit_ok);
    const Json j = read_json_file(path);
    CHECK(j["best_density"].get<double>() == doctest::Approx(0.6180339887).epsilon(1e-3));
}

TEST_CASE("search refusals") {
    CHECK(run({"search", "--host", "builtin:K4", "--family", "trees:4", "--caps", "3,3,3,3"}).code == exit_input_error);
    CHECK(run({"search", "--host", "builtin:K9", "--family", "trees:4"}).code == exit_input_error);
    CHECK(run({"search", "--host", "builtin:K3", "--family", "nope:3"}).code == exit_input_error);
    CHECK(run({"search", "--host", "builtin:K3", "--family", "clique:3", "--mode", "fast"}).code == exit_input_error);
}

TEST_CASE("invariant: identical command and seed give identical stdout") {
    const std::vector<std::string> search{"search", "--host", "builtin:K4", "--family", "trees:4", "--caps", "2,2,2,2",
                                          "--mode", "stochastic", "--restarts", "10", "--seed", "3"};
    const auto a = run(search);
    CHECK(a.code == exit_ok);
    CHECK(run(search).out == a.out);

    const std::string graph = constructed("leila", {"--r", "4"});
    std::vector<std::string> sample{"sample", "--graph", graph, "--family", "path:3", "--n", "5000", "--seed", "7"};
    const auto s = run(sample);
    CHECK(s.code == exit_ok);
    CHECK(run(sample).out == s.out);

    // The worker count changes only the recorded command line.
    sample.push_back("--quiet");
    const Json one = Json::parse(run(sample).out);
    sample.insert(sample.end(), {"--jobs", "3"});
    const Json three = Json::parse(run(sample).out);
    CHECK(one["estimate"] == three["estimate"]);
    CHECK(one["half_width"] == three["half_width"]);
}

TEST_CASE("exact, sample and depcheck") {
    const std::string parity6 = constructed("parity", {"--r", "6"});
    const auto exact = run({"exact", "--graph", parity6, "--family", "oddcycles", "--quiet"});
    CHECK(exact.code == exit_ok);
    CHECK(Json::parse(exact.out)["probability"] == 0.0);
    CHECK(run({"exact", "--graph", parity6, "--family", "oddcycles", "--cap", "10"}).code == exit_input_error);
    const auto sample = run({"sample", "--graph", parity6, "--family", "oddcycles", "--n", "1000", "--quiet"});
    CHECK(sample.code == exit_ok);
    CHECK(Json::parse(sample.out)["estimate"] == 0.0);
    CHECK(run({"sample", "--graph", parity6, "--family", "oddcycles", "--n", "10"}).code == exit_input_error);
    const auto dep = run({"depcheck", "--graph", parity6, "--A", "0,1", "--B", "2,3", "--n", "100000", "--seed", "7"});
    CHECK(dep.code == exit_ok);
    CHECK(run({"depcheck", "--graph", parity6, "--A", "0,1", "--B", "1,3"}).code == exit_input_error);
}

TEST_CASE("quiet writes JSON carrying the run metadata") {
    const auto r = run({"density", "--graph", constructed("two_colour", {"--r", "4"}), "--quiet", "--seed", "5"});
    CHECK(r.code == exit_ok);
    const Json j = Json::parse(r.out);
    CHECK(j["meta"]["seed"] == 5);
    CHECK(j["meta"]["command"].get<std::string>().rfind("density --graph", 0) == 0);
}

}  // TEST_SUITE

TEST_SUITE("known_discrepancies") {

TEST_CASE("verify-construction --all exits 0") {
    const auto r = run({"verify-construction", "--all", "--jobs", "1"});
    CHECK(r.code == exit_ok);
}

}  // TEST_SUITE
