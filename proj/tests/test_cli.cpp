#include "wh/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "wajsberg");
    std::ostringstream out, err;
    const int code = wh::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes")
{
    CHECK(run({"eval", "(x -> x*x) -> x", "--alg", "L3", "--set", "x=1"}).code == wh::cli::kExitYes);
    CHECK(run({"check-id", "x*x ~ x", "--alg", "L1"}).code == wh::cli::kExitYes);
    CHECK(run({"check-id", "x*x ~ x", "--alg", "L2"}).code == wh::cli::kExitNo);
    CHECK(run({"check-id", "x -> y ~ y -> x", "--pres", "J=2"}).code == wh::cli::kExitUnknown);
    CHECK(run({"primitive", "Q[J=2,3]"}).code == wh::cli::kExitUnknown);
    CHECK(run({"frobnicate"}).code == wh::cli::kExitUsage);
    CHECK(run({}).code == wh::cli::kExitUsage);
    CHECK(run({"comb"}).code == wh::cli::kExitUsage);
    CHECK(run({"comb", "I=2,4"}).code == wh::cli::kExitData);
    CHECK(run({"eval", "x ->", "--alg", "L2"}).code == wh::cli::kExitData);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("structural J=2 is refused with its reason")
{
    const auto r = run({"structural", "J=2"});
    CHECK(r.code == 1);
    CHECK(r.out.find("J ≠ ∅ and J ≠ {1}") != std::string::npos);
}

TEST_CASE("comb output passes is-comb")
{
    const auto r = run({"--json", "comb", "I=2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const std::string f = j["comb"];
    CHECK(f.rfind("L(", 0) == 0);
    CHECK(run({"is-comb", f, "I=2"}).code == 0);
    CHECK(run({"is-comb", "L(0,1;1,1)", "I=2"}).code == 1);
}

TEST_CASE("lattice emits DOT")
{
    const auto r = run({"lattice", "J=2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    const auto j = nlohmann::json::parse(run({"--json", "lattice", "J=2"}).out);
    CHECK(j["nodes"].size() >= 8);
}

TEST_CASE("reports are deterministic and valid JSON")
{
    const std::vector<std::vector<std::string>> commands{
        {"--json", "bdelta", "I=2; J=3"},
        {"--json", "bdelta", "J=2", "--verify", "embed3", "--depth", "3"},
        {"--json", "crosscheck", "I=2; J=3", "--seed", "9", "--count", "40"},
        {"--json", "check-rule", "x*x ~ 1 => x ~ 1", "--tabular", "3"},
    };
    for (const auto& c : commands) {
        const auto a = run(c), b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(nlohmann::json::parse(a.out).is_object());
    }
}

TEST_CASE("every subcommand runs")
{
    const std::string path = "cli_equations.txt";
    {
        std::ofstream f(path);
        f << "# identities\n(x -> y) -> y ~ (y -> x) -> x\n\nx /\\ y ~ y /\\ x\n";
    }
    const std::vector<std::pair<std::vector<std::string>, int>> cases{
        {{"eval", "x * y", "--alg", "L2 x Comega", "--set", "x=[1, -2]", "--set", "y=[2, -1]"}, 0},
        {{"check-id", "--file", path, "--alg", "L4"}, 0},
        {{"check-id", "(x -> x*x) -> x ~ 1", "--pres", "I=1"}, 1},
        {{"check-rule", "x*x ~ x => x ~ 1", "--alg", "L2"}, 1},
        {{"comb", "I=2,3; J=5"}, 0},
        {{"is-comb", "L(0,1;1/4,0;3/4,0;7/8,1;1,1)", "I=1; K=omega"}, 0},
        {{"targets", "I=2; J=3"}, 0},
        {{"pl", "(x -> x*x) -> x", "--at", "1/3"}, 0},
        {{"reduce", "I=2,4; J=8; K=omega"}, 0},
        {{"var-leq", "I=2", "J=2"}, 0},
        {{"var-leq", "J=2", "I=2"}, 1},
        {{"member", "L(2,1)", "J=2"}, 0},
        {{"structural", "I=2; J=1"}, 0},
        {{"core", "I=3; J=2"}, 0},
        {{"quasi-leq", "Q[J=2]", "Q[I=2; J=2]"}, 0},
        {{"primitive", "Q[I=2; J=2]"}, 1},
        {{"primitive", "I=2,3"}, 0},
        {{"lattice", "I=2; K=omega"}, 0},
        {{"bdelta", "I=2; K=omega", "--verify", "embed2"}, 0},
        {{"bdelta", "I=2,3", "--verify", "embed1"}, 0},
        {{"bdelta", "J=3", "--verify", "embed3", "--index", "3", "--depth", "2"}, 0},
        {{"gkh", "7", "3"}, 0},
        {{"subalgebra", "--alg", "L6", "--gen", "4"}, 0},
        {{"subalgebra", "--alg", "Comega", "--gen", "-1", "--budget", "10"}, 1},
        {{"embeds", "L(2,1)", "L(4,1)"}, 0},
        {{"rank", "L(6,4)"}, 0},
        {{"terms", "--depth", "1"}, 0},
        {{"crosscheck", "J=2", "--seed", "3", "--count", "30"}, 0},
    };
    for (const auto& [args, code] : cases) {
        const auto r = run(args);
        CAPTURE(args.front());
        CAPTURE(r.err);
        CHECK(r.code == code);
        CHECK_FALSE(r.out.empty());
    }
}
