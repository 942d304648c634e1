#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "starcong/canonical.hpp"

using starcong::cli::run;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("classify") {
    auto r = run({"classify", "0,1;1,1i"});
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.out) == "delta(1)  codim 2");
    CHECK(first_line(run({"classify", "0,0;0,0"}).out) == "zero  codim 8");
    CHECK(first_line(run({"classify", "0,1;1,0"}).out) == "pair(1,-1)  codim 4");
    CHECK(first_line(run({"classify", R"({"m":[["0","1"],[1,"1i"]]})"}).out) == "delta(1)  codim 2");

    r = run({"classify", "0,1;1,0", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "classify");
    CHECK(j["outputs"]["form"] == "pair(1,-1)");
    CHECK(j["outputs"]["codim"] == 4);

    CHECK(run({"classify", "1,2;3"}).exit_code == 2);
    CHECK(run({"classify", "1e-9,0;0,0"}).exit_code == 1);
    CHECK(run({"classify", "0,1;1,0", "--tol", "0"}).exit_code == 2);
    CHECK(run({"classify"}).exit_code == 2);
}

TEST_CASE("codim") {
    CHECK(run({"codim", "udz(1)"}).out == "5\n");
    CHECK(run({"codim", "zero"}).out == "8\n");
    const auto j = nlohmann::json::parse(run({"codim", "pair(1,1)", "--format", "json"}).out);
    CHECK(j["outputs"]["codim"] == 4);
    CHECK(j["outputs"]["star_count"] == 1);
    CHECK(run({"codim", "udz(2)"}).exit_code == 2);
}

TEST_CASE("arrow") {
    auto r = run({"arrow", "udz(1)", "delta(-1i)"});
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.out) == "reachable: true");
    CHECK(r.out.find("verified true") != std::string::npos);

    r = run({"arrow", "pair(1,-1)", "delta(1i)"});
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.out) == "reachable: false");
    CHECK(r.out.find("DetPhaseGap") != std::string::npos);

    r = run({"arrow", "zero", "zero"});
    CHECK(first_line(r.out) == "reachable: true");
    CHECK(r.out.find("lazy") != std::string::npos);

    CHECK(run({"arrow", "zero", "nope"}).exit_code == 2);
}

TEST_CASE("witness") {
    auto r = run({"witness", "zero", "hyp(0.5)", "--delta", "1e-3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verified    true") != std::string::npos);
    // printed matrices re-parse
    const auto line = r.out.substr(r.out.find("E           ") + 12);
    CHECK_NOTHROW(starcong::parse_matrix(first_line(line)));

    r = run({"witness", "udz(1)", "delta(1i)"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("HalfPlaneMargin") != std::string::npos);
    CHECK(run({"witness", "zero", "udz(1)", "--delta", "0"}).exit_code == 2);
    CHECK(run({"witness", "zero", "udz(1)", "--delta", "abc"}).exit_code == 2);

    const auto a = run({"witness", "udz(1)", "delta(1)", "--seed", "4", "--format", "json"});
    const auto b = run({"witness", "udz(1)", "delta(1)", "--seed", "4", "--format", "json"});
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["seed"] == 4);
    CHECK(j["outputs"]["verified"] == true);
}

TEST_CASE("sample") {
    const auto a = run({"sample", "pair(1,1)", "--delta", "1e-3", "--samples", "1000", "--seed", "3", "--format", "json"});
    const auto b = run({"sample", "pair(1,1)", "--delta", "1e-3", "--samples", "1000", "--seed", "3", "--format", "json"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["outputs"]["histogram"]["pair"] == 1000);
    CHECK(run({"sample", "zero", "--samples", "-5"}).exit_code == 2);
    CHECK(run({"sample", "zero", "--samples", "20000000"}).exit_code == 2);
    CHECK(run({"sample", "zero", "--samples", "100"}).out.find("max_spectrum_drift n/a") != std::string::npos);
}

TEST_CASE("graph") {
    const auto r = run({"graph", "zero", "udz(1)", "pair(1,1)", "pair(1,-1)",
                        "pair(0.7071067811865476+0.7071067811865476i,0.7071067811865476-0.7071067811865476i)",
                        "hyp(0.3)", "delta(1)"});
    CHECK(r.exit_code == 0);
    std::ifstream in(STARCONG_GOLDEN_DOT, std::ios::binary);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(r.out == golden.str());

    const auto empty = run({"graph"});
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("->") == std::string::npos);
    CHECK(run({"graph", "zero", "zero"}).exit_code == 2);
    const auto j = nlohmann::json::parse(run({"graph", "zero", "udz(1)", "--format", "json"}).out);
    CHECK(j["outputs"]["edges"].size() == 1);
}

TEST_CASE("usage") {
    CHECK(run({}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"codim", "zero", "--format", "xml"}).exit_code == 2);
    const auto help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("classify") != std::string::npos);
    CHECK(run({"--version"}).out.find("starcong 0.1.0") != std::string::npos);
}
