#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/indsub.hpp"
#include "linkagelab/reduction.hpp"
#include "linkagelab/util.hpp"

using namespace linkagelab;
using nlohmann::json;

namespace {

std::filesystem::path cli_path;
std::filesystem::path scratch;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

// Runs the CLI through the shell; prefix lets tests set environment variables.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
    static int counter = 0;
    auto outp = scratch / ("out" + std::to_string(counter) + ".txt");
    auto errp = scratch / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = prefix + cli_path.string() + " " + args + " > " + outp.string() +
                      " 2> " + errp.string();
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(outp), slurp(errp)};
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
    auto p = scratch / name;
    std::ofstream out(p);
    out << text;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    cli_path = std::filesystem::absolute(argv[0]).parent_path() / "linkagelab";
    scratch = std::filesystem::temp_directory_path() /
              ("linkagelab_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(scratch);
    doctest::Context ctx(argc, argv);
    int rc = ctx.run();
    std::error_code ec;
    std::filesystem::remove_all(scratch, ec);
    return rc;
}

TEST_CASE("matching file parsing reports line numbers") {
    std::istringstream odd("0 1\nx 2\n");
    try {
        read_matching_file(odd);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    std::istringstream dup("0 1\n1 2\n");
    Matching shared = read_matching_file(dup);  // parses; validation happens later
    CHECK_THROWS_AS(require_matching(shared, 4), std::invalid_argument);
    std::istringstream ok("0 3\n\n1 2\n");
    Matching m = read_matching_file(ok);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == std::pair<int, int>(0, 3));
}

TEST_CASE("cli usage errors exit with 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("bogus").code == 2);
    CHECK(run_cli("benes build").code == 2);  // --level is required
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("flow eps --graph /nonexistent.graph --terminals '0,1'").code == 2);
}

TEST_CASE("benes build emits a parsable network") {
    RunResult plain = run_cli("benes build --level 2");
    REQUIRE(plain.code == 0);
    std::istringstream in(plain.out);
    GraphFile gf = read_graph_file(in);
    CHECK(gf.graph.n() == 16);
    CHECK(gf.inputs.size() == 4);
    CHECK(gf.outputs.size() == 4);
    CHECK(gf.graph.max_degree() == 4);

    RunResult aug = run_cli("benes build --level 2 --augment");
    REQUIRE(aug.code == 0);
    std::istringstream ain(aug.out);
    GraphFile af = read_graph_file(ain);
    CHECK(af.graph.m() == gf.graph.m() + 2);
    CHECK(af.graph.max_degree() <= 4);

    RunResult d3 = run_cli("benes build --level 3 --degree3");
    REQUIRE(d3.code == 0);
    std::istringstream din(d3.out);
    GraphFile df = read_graph_file(din);
    CHECK(df.graph.max_degree() == 3);
    CHECK(df.inputs.size() == 8);
}

TEST_CASE("benes route certifies a matching on the inputs") {
    auto mfile = write_file("pairs.matching", "0 1\n2 3\n");
    RunResult r = run_cli("benes route --level 2 --matching " + mfile.string());
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["level"] == 2);
    CHECK(j["verified"] == true);
    CHECK(j["paths"].size() == 2);

    auto bad = write_file("bad.matching", "0 0\n");
    CHECK(run_cli("benes route --level 2 --matching " + bad.string()).code == 2);
}

TEST_CASE("linkage certify maps statuses onto exit codes") {
    std::ostringstream k4;
    write_graph_file(k4, [] {
        Graph g(4);
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
        return g;
    }());
    auto k4p = write_file("k4.graph", k4.str());
    RunResult good = run_cli("linkage certify --graph " + k4p.string() +
                             " --set '0,1,2,3' --budget 1000");
    REQUIRE(good.code == 0);
    json gj = json::parse(good.out);
    CHECK(gj["status"] == "certified");
    CHECK(gj["matchings_checked"] == 3);

    std::ostringstream p4;
    write_graph_file(p4, [] {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        return g;
    }());
    auto p4p = write_file("p4.graph", p4.str());
    RunResult ref = run_cli("linkage certify --graph " + p4p.string() +
                            " --set '0,1,2,3' --budget 1000");
    CHECK(ref.code == 1);
    json rj = json::parse(ref.out);
    CHECK(rj["status"] == "refuted");
    REQUIRE(rj.contains("refuting_matching"));
    CHECK(rj["refuting_matching"].size() == 2);

    RunResult inc = run_cli("linkage certify --graph " + k4p.string() +
                            " --set '0,1,2,3' --budget 1");
    CHECK(inc.code == 2);
    CHECK(json::parse(inc.out)["status"] == "inconclusive");
}

TEST_CASE("reduce pipeline verifies counts end to end") {
    std::ostringstream c5;
    write_graph_file(c5, [] {
        Graph g(5);
        for (int v = 0; v < 5; ++v) g.add_edge(v, (v + 1) % 5);
        return g;
    }());
    auto c5p = write_file("c5.graph", c5.str());
    RunResult r = run_cli("reduce pipeline --instance " + c5p.string() +
                          " --pattern benes:2 --verify");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "equal");
    CHECK(j["colorings"] == 30);
    CHECK(j["assignments"] == 30);
    CHECK(j["colorful"] == 30);

    // Without --verify nothing is counted and the verdict stays open.
    RunResult skip = run_cli("reduce pipeline --instance " + c5p.string() + " --pattern benes:2");
    REQUIRE(skip.code == 0);
    json sj = json::parse(skip.out);
    CHECK(sj["verdict"] == "skipped");
    CHECK(sj["colorings"].is_null());

    CHECK(run_cli("reduce pipeline --instance " + c5p.string() + " --pattern grid:1").code == 2);
}

TEST_CASE("flow eps pins the two-terminal constant") {
    std::ostringstream k2;
    write_graph_file(k2, [] {
        Graph g(2);
        g.add_edge(0, 1);
        return g;
    }());
    auto k2p = write_file("k2.graph", k2.str());
    RunResult r = run_cli("flow eps --graph " + k2p.string() + " --terminals '0,1'");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["epsilon"] == "1/3");
    CHECK(j["D"] == 3);
    CHECK(j["q"] == 1);
    CHECK(j["terminals"] == json::array({0, 1}));
}

TEST_CASE("random experiment honors seed flag and environment") {
    RunResult r = run_cli("random experiment --k 6 --p 1 --r 1 --trials 3 --seed 5");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["seed"] == 5);
    CHECK(j["successes"] == 3);

    RunResult env = run_cli("random experiment --k 6 --p 1 --r 1 --trials 3",
                            "LINKAGELAB_SEED=7 ");
    REQUIRE(env.code == 0);
    CHECK(json::parse(env.out)["seed"] == 7);

    CHECK(run_cli("random experiment --k 6 --p 1 --m 3 --r 1 --trials 3").code == 2);
    CHECK(run_cli("random experiment --k 6 --r 1 --trials 3").code == 2);
}

TEST_CASE("indsub reduce matches the direct count") {
    std::ostringstream p3;
    Graph h(3);
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    write_graph_file(p3, h);
    auto p3p = write_file("p3.graph", p3.str());

    ColoredGraph host;
    host.graph = Graph(6);
    host.graph.add_edge(0, 1);
    host.graph.add_edge(1, 2);
    host.graph.add_edge(3, 4);
    host.graph.add_edge(4, 5);
    host.graph.add_edge(1, 3);
    host.color = {0, 1, 2, 0, 1, 2};
    std::ostringstream hs;
    write_graph_file(hs, host.graph, &host.color);
    auto hostp = write_file("host.colored", hs.str());

    RunResult r = run_cli("indsub reduce --pattern " + p3p.string() + " --host " +
                          hostp.string() + " --invariant indicator");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["match"] == true);
    CHECK(j["direct_count"] == count_colorful_sub(h, colsub_preprocess(h, host)));
    CHECK(j["reduced_count"] == j["direct_count"]);

    // An invariant whose alternating enumerator vanishes is rejected up front.
    CHECK(run_cli("indsub reduce --pattern " + p3p.string() + " --host " + hostp.string() +
                  " --invariant one")
              .code == 2);
}

TEST_CASE("selftest runs a single criterion") {
    RunResult r = run_cli("selftest --only 1");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["all_passed"] == true);
    REQUIRE(j["criteria"].size() == 1);
    CHECK(j["criteria"][0]["id"] == 1);
    CHECK(j["criteria"][0]["passed"] == true);
}
