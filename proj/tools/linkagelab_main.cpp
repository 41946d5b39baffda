#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "linkagelab/acceptance.hpp"
#include "linkagelab/benes.hpp"
#include "linkagelab/blowup.hpp"
#include "linkagelab/flow.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/indsub.hpp"
#include "linkagelab/linkage.hpp"
#include "linkagelab/randomexp.hpp"
#include "linkagelab/reduction.hpp"
#include "linkagelab/util.hpp"

using nlohmann::json;
using namespace linkagelab;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LINKAGELAB_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 2026;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto a = tok.find_first_not_of(" \t");
        auto b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(std::stoi(tok.substr(a, b - a + 1)));
    }
    return out;
}

json linkage_json(const Linkage& l) {
    json jm = json::array(), jp = json::array();
    for (const auto& [u, v] : l.matching) jm.push_back({u, v});
    for (const auto& p : l.paths) jp.push_back(p);
    return json{{"matching", jm}, {"paths", jp}};
}

struct Session {
    std::uint64_t seed = default_seed();
    int jobs = 1;
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    // RunReport envelope: command echo, seed, timing, plus the payload.
    void emit(json payload) const {
        payload["command"] = command;
        payload["seed"] = seed;
        payload["elapsed_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << payload.dump(2) << "\n";
    }
};

int run_benes_build(const Session& s, int level, bool augment, bool degree3) {
    BenesNetwork net = build_benes(level, augment);
    if (degree3) {
        Degree3Network d3 = degree3_transform(net);
        write_graph_file(std::cout, d3.graph, nullptr, &d3.inputs, &d3.outputs);
        std::cerr << "benes level " << level << (augment ? " augmented" : "")
                  << " degree-3: " << d3.graph.n() << " vertices, " << d3.graph.m()
                  << " edges, max degree " << d3.graph.max_degree() << "\n";
        return 0;
    }
    write_graph_file(std::cout, net.graph, nullptr, &net.inputs, &net.outputs);
    std::cerr << "benes level " << level << (augment ? " augmented" : "") << ": "
              << net.graph.n() << " vertices, " << net.graph.m() << " edges\n";
    return 0;
}

int run_benes_route(const Session& s, int level, const std::string& matching_path) {
    Matching m = read_matching_path(matching_path);
    BenesNetwork aug = build_benes(level, true);
    Linkage link = augmented_link(level, m);
    verify_linkage(link, aug.graph.n(), [&](int a, int b) { return aug.graph.has_edge(a, b); },
                   1);
    json payload = linkage_json(link);
    payload["level"] = level;
    payload["augmented"] = true;
    payload["verified"] = true;
    s.emit(payload);
    std::cerr << "routed " << m.size() << " pairs at congestion 1 in the level-" << level
              << " augmented network\n";
    return 0;
}

int run_linkage_certify(const Session& s, const std::string& graph_path, const std::string& set_str,
                        int q, long long budget) {
    GraphFile gf = read_graph_path(graph_path);
    Graph host = q > 1 ? blowup(gf.graph, q) : gf.graph;
    std::vector<int> set = parse_int_list(set_str);
    CertificationResult res = is_matching_linked(host, set, budget, s.jobs);
    const char* status = res.status == CertStatus::Certified    ? "certified"
                         : res.status == CertStatus::Refuted    ? "refuted"
                                                                : "inconclusive";
    json payload{{"set", set},
                 {"q", q},
                 {"matchings_checked", res.matchings_checked},
                 {"status", status},
                 {"search_nodes", res.nodes}};
    if (res.status == CertStatus::Refuted) {
        json refuting = json::array();
        for (const auto& [u, v] : res.refuting) refuting.push_back({u, v});
        payload["refuting_matching"] = refuting;
    }
    s.emit(payload);
    std::cerr << "set of " << set.size() << " vertices: " << status << " after "
              << res.matchings_checked << " matchings\n";
    if (res.status == CertStatus::Certified) return 0;
    return res.status == CertStatus::Refuted ? 1 : 2;
}

LinkedSetWitness witness_for_pattern(const std::string& pattern) {
    auto colon = pattern.find(':');
    require(colon != std::string::npos, "pattern must be benes:L, grid:L, or file:PATH");
    std::string kind = pattern.substr(0, colon), arg = pattern.substr(colon + 1);
    if (kind == "benes") return benes_inputs_witness(std::stoi(arg));
    if (kind == "grid") return grid_diagonal_witness(std::stoi(arg));
    require(kind == "file", "pattern must be benes:L, grid:L, or file:PATH");
    GraphFile gf = read_graph_path(arg);
    MaxSetResult ms = max_matching_linked_set(gf.graph, 1);
    require(!ms.set.empty(), "no certified matching-linked set found in pattern");
    return backtracking_witness(gf.graph, 1, ms.set, 200'000);
}

int run_reduce_pipeline(const Session& s, const std::string& instance_path,
                        const std::string& pattern, bool verify) {
    GraphFile gf = read_graph_path(instance_path);
    LinkedSetWitness w = witness_for_pattern(pattern);
    PipelineOptions popt;
    popt.verify_counts = verify;
    popt.jobs = s.jobs;
    PipelineReport rep = full_pipeline(gf.graph, w, popt);
    const char* verdict = rep.verdict == CountVerdict::Equal      ? "equal"
                          : rep.verdict == CountVerdict::Mismatch ? "mismatch"
                                                                  : "skipped";
    json payload{{"n", rep.n},
                 {"k", rep.k},
                 {"t", rep.t},
                 {"layers", rep.layers},
                 {"dummy_embedding", rep.dummy},
                 {"router", rep.router},
                 {"instance_vertices", rep.instance_vertices},
                 {"instance_edges", rep.instance_edges},
                 {"compat_vertices", rep.compat_vertices},
                 {"compat_edges", rep.compat_edges},
                 {"verdict", verdict}};
    payload["colorings"] = rep.colorings ? json(*rep.colorings) : json(nullptr);
    payload["assignments"] = rep.assignments ? json(*rep.assignments) : json(nullptr);
    payload["colorful"] = rep.colorful ? json(*rep.colorful) : json(nullptr);
    s.emit(payload);
    std::ostringstream sum;
    sum << "pattern " << pattern << ", t = " << rep.t << ", split-and-list "
        << rep.compat_vertices << " vertices / " << rep.compat_edges << " edges";
    if (rep.colorings) sum << "; counts " << *rep.colorings;
    if (rep.assignments) sum << " = " << *rep.assignments;
    if (rep.colorful) sum << " = " << *rep.colorful;
    sum << " (" << verdict << ")";
    std::cerr << sum.str() << "\n";
    return rep.verdict == CountVerdict::Mismatch ? 1 : 0;
}

int run_flow_eps(const Session& s, const std::string& graph_path, const std::string& terminals) {
    GraphFile gf = read_graph_path(graph_path);
    std::vector<int> w = parse_int_list(terminals);
    FlowSolution sol = solve_concurrent_flow(gf.graph, w);
    CongestedCliqueLinkage cl = integralize(sol);
    long long t = static_cast<long long>(sol.terminals.size());
    Rational raw = sol.eps * t * t / 108;
    CapacityBound bound = make_capacity_bound(raw, "concurrent flow", false);
    json payload{{"epsilon", to_string(sol.eps)},
                 {"D", cl.D},
                 {"q", cl.q},
                 {"bound", to_string(bound.value)},
                 {"bound_raw", to_string(bound.raw)},
                 {"terminals", sol.terminals},
                 {"lp_variables", sol.variables},
                 {"lp_pivots", sol.pivots}};
    s.emit(payload);
    std::cerr << "epsilon = " << to_string(sol.eps) << " (D = " << cl.D << ", q = " << cl.q
              << ")\n";
    return 0;
}

int run_random_experiment(const Session& s, int k, std::optional<double> p,
                          std::optional<long long> m, int r, long long trials,
                          long long budget) {
    ExperimentReport rep = random_linkage_experiment(k, p, m, r, trials, s.seed, budget, s.jobs);
    json payload{{"k", rep.k},
                 {"r", rep.r},
                 {"trials", rep.trials},
                 {"successes", rep.successes},
                 {"failures", rep.failures},
                 {"inconclusive", rep.inconclusive},
                 {"rate", rep.rate},
                 {"wilson_low", rep.wilson_low},
                 {"wilson_high", rep.wilson_high},
                 {"trial_seeds", rep.trial_seeds}};
    payload["p"] = rep.p ? json(*rep.p) : json(nullptr);
    payload["m"] = rep.m ? json(*rep.m) : json(nullptr);
    s.emit(payload);
    std::cerr << "successes " << rep.successes << "/" << rep.trials << ", rate " << rep.rate
              << ", Wilson [" << rep.wilson_low << ", " << rep.wilson_high << "]\n";
    return 0;
}

GraphInvariant invariant_from_name(const std::string& name, const Graph& h) {
    int k = h.n();
    if (name == "clique") return GraphInvariant::indicator_clique(k);
    if (name == "edgeless") return GraphInvariant::indicator_edgeless(k);
    if (name == "connected") return GraphInvariant::indicator_connected(k);
    if (name == "even") return GraphInvariant::indicator_even_edges(k);
    if (name == "one") return GraphInvariant::constant_one(k);
    if (name == "indicator") return GraphInvariant::indicator_of(h);
    if (name.rfind("table:", 0) == 0) {
        std::ifstream in(name.substr(6));
        require(in.good(), "cannot open invariant table file");
        std::map<std::string, Rational> table;
        std::string bits, value;
        while (in >> bits >> value) table[bits] = Rational(value);
        return GraphInvariant::from_table(k, std::move(table));
    }
    require(false, "invariant must be clique|edgeless|connected|even|one|indicator|table:FILE");
    return GraphInvariant::constant_one(k);
}

int run_indsub_reduce(const Session& s, const std::string& pattern_path,
                      const std::string& host_path, const std::string& invariant) {
    GraphFile pf = read_graph_path(pattern_path);
    GraphFile hf = read_graph_path(host_path);
    require(!hf.color.empty(), "host must carry colors (c lines)");
    ColoredGraph host{hf.graph, hf.color};
    ColoredGraph pre = colsub_preprocess(pf.graph, host);
    GraphInvariant phi = invariant_from_name(invariant, pf.graph);
    Rational phi_hat = alternating_enumerator(phi, pf.graph);
    require(phi_hat != 0, "alternating enumerator vanishes on the pattern");
    long long reduced = colsub_via_indsub(pf.graph, pre, phi, s.jobs);
    long long direct = count_colorful_sub(pf.graph, pre);
    bool match = reduced == direct;
    json payload{{"phi_hat", to_string(phi_hat)},
                 {"invariant", phi.name()},
                 {"reduced_count", reduced},
                 {"direct_count", direct},
                 {"match", match},
                 {"host_vertices", host.graph.n()},
                 {"preprocessed_edges", pre.graph.m()}};
    s.emit(payload);
    std::cerr << "reduced " << reduced << " vs direct " << direct
              << (match ? " (match)" : " (MISMATCH)") << "\n";
    return match ? 0 : 1;
}

int run_selftest(const Session& s, const std::string& only_str) {
    AcceptanceOptions opt;
    opt.seed = s.seed;
    opt.jobs = s.jobs;
    opt.only = parse_int_list(only_str);
    std::vector<CriterionResult> results = run_acceptance(opt);
    bool all = true;
    json arr = json::array();
    for (const CriterionResult& r : results) {
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
        std::cerr << "criterion " << r.id << " " << r.name << ": "
                  << (r.passed ? "pass" : "FAIL") << " (" << r.seconds << " s) " << r.detail
                  << "\n";
        all = all && r.passed;
    }
    s.emit(json{{"criteria", arr}, {"all_passed", all}});
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Session session;
    std::ostringstream echo;
    for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];
    session.command = echo.str();

    CLI::App app{"linkage capacity and counting-reduction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", session.seed, "RNG seed (default from LINKAGELAB_SEED)");
    app.add_option("--jobs", session.jobs, "worker thread bound")->check(CLI::PositiveNumber);

    int exit_code = 0;

    auto* benes = app.add_subcommand("benes", "switching network construction and routing");
    benes->require_subcommand(1);
    benes->fallthrough();
    auto* bbuild = benes->add_subcommand("build", "emit a network in graph format");
    bbuild->fallthrough();
    int blevel = 1;
    bool baugment = false, bdeg3 = false;
    bbuild->add_option("--level", blevel, "recursion level")->required();
    bbuild->add_flag("--augment", baugment, "add the output rung edges");
    bbuild->add_flag("--degree3", bdeg3, "split degree-4 vertices");
    bbuild->callback([&] { exit_code = run_benes_build(session, blevel, baugment, bdeg3); });
    auto* broute = benes->add_subcommand("route", "route an input matching in the augmented network");
    broute->fallthrough();
    int rlevel = 1;
    std::string rmatching;
    broute->add_option("--level", rlevel, "recursion level")->required();
    broute->add_option("--matching", rmatching, "matching file (`<i> <j>` lines)")->required();
    broute->callback([&] { exit_code = run_benes_route(session, rlevel, rmatching); });

    auto* linkage = app.add_subcommand("linkage", "matching-linked set certification");
    linkage->require_subcommand(1);
    linkage->fallthrough();
    auto* certify = linkage->add_subcommand("certify", "certify a matching-linked set");
    certify->fallthrough();
    std::string cgraph, cset;
    int cq = 1;
    long long cbudget = 200'000;
    certify->add_option("--graph", cgraph, "host graph file")->required();
    certify->add_option("--set", cset, "comma-separated vertex ids (blowup ids when --blowup)")
        ->required();
    certify->add_option("--blowup", cq, "certify inside host (x) J_q");
    certify->add_option("--budget", cbudget, "search nodes per matching")->required();
    certify->callback([&] { exit_code = run_linkage_certify(session, cgraph, cset, cq, cbudget); });

    auto* reduce = app.add_subcommand("reduce", "coloring-to-colorful-subgraph pipeline");
    reduce->require_subcommand(1);
    reduce->fallthrough();
    auto* pipeline = reduce->add_subcommand("pipeline", "run the full reduction");
    pipeline->fallthrough();
    std::string pinstance, ppattern;
    bool pverify = false;
    pipeline->add_option("--instance", pinstance, "instance graph file")->required();
    pipeline->add_option("--pattern", ppattern, "benes:L, grid:L, or file:H.graph")->required();
    pipeline->add_flag("--verify", pverify, "run all three exact counts");
    pipeline->callback(
        [&] { exit_code = run_reduce_pipeline(session, pinstance, ppattern, pverify); });

    auto* flow = app.add_subcommand("flow", "concurrent flow and derived witnesses");
    flow->require_subcommand(1);
    flow->fallthrough();
    auto* eps = flow->add_subcommand("eps", "exact concurrent flow value");
    eps->fallthrough();
    std::string fgraph, fterminals;
    eps->add_option("--graph", fgraph, "host graph file")->required();
    eps->add_option("--terminals", fterminals, "comma-separated terminal ids")->required();
    eps->callback([&] { exit_code = run_flow_eps(session, fgraph, fterminals); });

    auto* random = app.add_subcommand("random", "random graph linkage experiments");
    random->require_subcommand(1);
    random->fallthrough();
    auto* experiment = random->add_subcommand("experiment", "equipartition routing trials");
    experiment->fallthrough();
    int xk = 2, xr = 1;
    long long xtrials = 100, xbudget = 2'000'000;
    double xp = -1;
    long long xm = -1;
    experiment->add_option("--k", xk, "vertex count")->required();
    experiment->add_option("--p", xp, "edge probability");
    experiment->add_option("--m", xm, "edge count (alternative to --p)");
    experiment->add_option("--r", xr, "equipartition parts")->required();
    experiment->add_option("--trials", xtrials, "trial count")->required();
    experiment->add_option("--budget", xbudget, "search nodes per routing call");
    experiment->callback([&] {
        require((xp >= 0) != (xm >= 0), "give exactly one of --p or --m");
        exit_code = run_random_experiment(
            session, xk, xp >= 0 ? std::optional<double>(xp) : std::nullopt,
            xm >= 0 ? std::optional<long long>(xm) : std::nullopt, xr, xtrials, xbudget);
    });

    auto* indsub = app.add_subcommand("indsub", "alternating-enumerator counting reduction");
    indsub->require_subcommand(1);
    indsub->fallthrough();
    auto* ireduce = indsub->add_subcommand("reduce", "colorful count via induced-subgraph counts");
    ireduce->fallthrough();
    std::string ipattern, ihost, iinvariant = "indicator";
    ireduce->add_option("--pattern", ipattern, "pattern graph file")->required();
    ireduce->add_option("--host", ihost, "colored host graph file")->required();
    ireduce->add_option("--invariant", iinvariant,
                        "clique|edgeless|connected|even|one|indicator|table:FILE");
    ireduce->callback([&] { exit_code = run_indsub_reduce(session, ipattern, ihost, iinvariant); });

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->fallthrough();
    std::string sonly;
    selftest->add_option("--only", sonly, "comma-separated criterion ids");
    selftest->callback([&] { exit_code = run_selftest(session, sonly); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const EnvelopeError& e) {
        std::cerr << "outside supported envelope: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
