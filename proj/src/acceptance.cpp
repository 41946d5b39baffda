#include "linkagelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "linkagelab/benes.hpp"
#include "linkagelab/blowup.hpp"
#include "linkagelab/flow.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/indsub.hpp"
#include "linkagelab/linkage.hpp"
#include "linkagelab/randomexp.hpp"
#include "linkagelab/reduction.hpp"
#include "linkagelab/util.hpp"

namespace linkagelab {

namespace {

// All matchings on verts (partial ones and the empty matching included).
void matchings_rec(const std::vector<int>& pool, Matching& cur,
                   const std::function<void(const Matching&)>& fn) {
    if (pool.empty()) {
        fn(cur);
        return;
    }
    std::vector<int> rest(pool.begin() + 1, pool.end());
    matchings_rec(rest, cur, fn);
    for (std::size_t i = 0; i < rest.size(); ++i) {
        std::vector<int> next = rest;
        next.erase(next.begin() + static_cast<long>(i));
        cur.push_back(make_edge(pool[0], rest[i]));
        matchings_rec(next, cur, fn);
        cur.pop_back();
    }
}

void for_all_matchings(const std::vector<int>& verts,
                       const std::function<void(const Matching&)>& fn) {
    Matching cur;
    matchings_rec(verts, cur, fn);
}

Graph random_gnp_rng(Rng& rng, int n, double p) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.coin(p)) g.add_edge_unchecked(u, v);
    g.normalize();
    return g;
}

Graph random_connected(Rng& rng, int n, double p, int max_deg) {
    for (;;) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (g.degree(u) < max_deg && g.degree(v) < max_deg && rng.coin(p))
                    g.add_edge_unchecked(u, v);
        g.normalize();
        if (is_connected(g)) return g;
    }
}

std::string criterion_benes_structure(const AcceptanceOptions&) {
    for (int l = 1; l <= 8; ++l) {
        auto net = build_benes(l, false);
        long long s = 1ll << l;
        check(benes_size(l) == 2 * s * l, "closed form vertex count");
        check(net.graph.n() == benes_size(l), "built vertex count");
        if (l >= 2) check(benes_size(l) == 2 * benes_size(l - 1) + 2 * s, "size recurrence");
        check(net.graph.max_degree() == (l >= 2 ? 4 : 2), "max degree");
        check(static_cast<long long>(net.inputs.size()) == s &&
                  static_cast<long long>(net.outputs.size()) == s,
              "terminal counts");
        check(build_benes(l, true).graph.max_degree() <= 4, "augmented max degree");
    }
    return "levels 1..8: 2*s*log2(s) vertices, degree 4, T(s) = 2T(s/2) + 2s";
}

std::string criterion_benes_routing(const AcceptanceOptions& opt) {
    long long perms = 0, input_matchings = 0;
    for (int l = 1; l <= 3; ++l) {
        auto net = build_benes(l, false);
        auto aug = build_benes(l, true);
        int s = 1 << l;
        std::vector<int> perm(s);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Linkage link = benes_link(l, perm);
            check(static_cast<int>(link.paths.size()) == s, "one path per input");
            verify_linkage(link, net.graph.n(),
                           [&](int a, int b) { return net.graph.has_edge(a, b); }, 1);
            ++perms;
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<int> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        for_all_matchings(idx, [&](const Matching& m) {
            Linkage link = augmented_link(l, m);
            check(link.paths.size() == m.size(), "one path per matching edge");
            verify_linkage(link, aug.graph.n(),
                           [&](int a, int b) { return aug.graph.has_edge(a, b); }, 1);
            ++input_matchings;
        });
    }
    Rng rng(derive_seed(opt.seed, 2));
    for (int l = 4; l <= 5; ++l) {
        auto net = build_benes(l, false);
        auto aug = build_benes(l, true);
        int s = 1 << l;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<int> perm(s);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            verify_linkage(benes_link(l, perm), net.graph.n(),
                           [&](int a, int b) { return net.graph.has_edge(a, b); }, 1);
            ++perms;
            std::vector<int> idx(s);
            std::iota(idx.begin(), idx.end(), 0);
            rng.shuffle(idx);
            Matching m;
            int pairs = static_cast<int>(rng.below(s / 2 + 1));
            for (int i = 0; i < pairs; ++i) m.push_back(make_edge(idx[2 * i], idx[2 * i + 1]));
            verify_linkage(augmented_link(l, m), aug.graph.n(),
                           [&](int a, int b) { return aug.graph.has_edge(a, b); }, 1);
            ++input_matchings;
        }
    }
    std::ostringstream det;
    det << perms << " permutations and " << input_matchings
        << " input matchings routed at congestion 1";
    return det.str();
}

std::string criterion_grid_constants(const AcceptanceOptions&) {
    long long routed = 0;
    for (int l = 1; l <= 6; ++l) {
        Graph gr = grid_graph(l);
        std::vector<int> diag(l);
        std::iota(diag.begin(), diag.end(), 0);
        for_all_matchings(diag, [&](const Matching& m) {
            Linkage two = grid_diagonal_linkage(l, m);
            verify_linkage(two, l * l, [&](int a, int b) { return gr.has_edge(a, b); }, 2);
            Linkage one = grid_blowup2_linkage(l, m);
            verify_linkage(one, l * l * 2,
                           [&](int a, int b) { return blowup_adjacent(gr, 2, a, b); }, 1);
            ++routed;
        });
        check(grid_capacity(l).raw == Rational(l - 1, 6), "capacity bound (l-1)/6");
    }
    std::ostringstream det;
    det << routed << " diagonal matchings: congestion 2 plain, 1 in the 2-blowup";
    return det.str();
}

std::string criterion_reduction_end_to_end(const AcceptanceOptions& opt) {
    std::vector<LinkedSetWitness> pats;
    pats.push_back(benes_inputs_witness(2));
    pats.push_back(benes_inputs_witness(3));
    pats.push_back(grid_diagonal_witness(4));
    PipelineOptions popt;
    popt.jobs = opt.jobs;
    Rng rng(derive_seed(opt.seed, 4));
    long long runs = 0, max_compat = 0;
    for (int i = 0; i < 200; ++i) {
        int n = 3 + static_cast<int>(rng.below(8));
        double p = 0.25 + 0.05 * static_cast<double>(rng.below(8));
        Graph g = random_connected(rng, n, p, 4);
        for (const auto& w : pats) {
            PipelineReport rep = full_pipeline(g, w, popt);
            check(rep.colorings && rep.assignments && rep.colorful, "all three counts present");
            check(rep.verdict == CountVerdict::Equal, "count equality");
            long long limit = 1;
            for (int j = 0; j < rep.t; ++j) limit *= 3;
            check(rep.compat_vertices <= rep.k * limit, "|V(X)| <= k*3^t");
            max_compat = std::max(max_compat, rep.compat_vertices);
            ++runs;
        }
    }
    std::ostringstream det;
    det << runs << " pipeline runs with equal counts; largest split-and-list graph "
        << max_compat << " vertices";
    return det.str();
}

std::string criterion_oracle_equivalence(const AcceptanceOptions&) {
    long long cases = 0;
    int classes = 0;
    for (int k = 1; k <= 4; ++k)
        for (const Graph& h : unlabeled_graphs(k)) {
            ++classes;
            for (int t = 1; t <= 2; ++t) {
                Graph host = blowup(h, t);
                std::vector<int> verts(h.n() * t);
                std::iota(verts.begin(), verts.end(), 0);
                for_all_matchings(verts, [&](const Matching& m) {
                    bool oracle = appendix_linkage_oracle(h, t, m);
                    RouteResult res = find_linkage_backtracking(host, m, 50'000'000);
                    check(res.status != RouteStatus::BudgetExceeded, "solver budget exhausted");
                    check(oracle == (res.status == RouteStatus::Found), "oracle disagreement");
                    ++cases;
                });
            }
        }
    std::ostringstream det;
    det << classes << " host classes, t in {1,2}, " << cases << " matchings: oracle == solver";
    return det.str();
}

std::string criterion_flow_lp(const AcceptanceOptions& opt) {
    Graph k2(2);
    k2.add_edge(0, 1);
    check(solve_concurrent_flow(k2, {0}).eps == Rational(1), "eps({u}) = 1");
    check(solve_concurrent_flow(k2, {0, 1}).eps == Rational(1, 3), "eps(K_2, V) = 1/3");

    Rng rng(derive_seed(opt.seed, 6));
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(rng.below(6));
        Graph h = random_connected(rng, n, 0.45, n);
        std::vector<int> verts(n);
        std::iota(verts.begin(), verts.end(), 0);
        rng.shuffle(verts);
        int wsize = 2 + static_cast<int>(rng.below(n - 1));
        std::vector<int> w(verts.begin(), verts.begin() + wsize);
        FlowSolution sol = solve_concurrent_flow(h, w);
        check(sol.eps >= 0 && sol.eps <= Rational(1, wsize), "eps <= 1/|W|");
        CongestedCliqueLinkage cl = integralize(sol);
        std::vector<long long> load(h.n(), 0);
        for (std::size_t pi = 0; pi < cl.pairs.size(); ++pi) {
            check(static_cast<long long>(cl.paths[pi].size()) == cl.q, "exactly q paths per pair");
            for (const auto& path : cl.paths[pi])
                for (int v : path) load[v] += 2;
        }
        for (int v = 0; v < h.n(); ++v) check(load[v] <= cl.D, "congestion <= D");
    }

    for (int trial = 0; trial < 100; ++trial) {
        int t = 2 + static_cast<int>(rng.below(24));
        long long q = 1 + static_cast<long long>(rng.below(4));
        long long cap = q * t;
        Multigraph dem(t);
        std::vector<long long> deg(t, 0);
        long long attempts = cap * t;
        for (long long it = 0; it < attempts; ++it) {
            int a = static_cast<int>(rng.below(t));
            int b = static_cast<int>(rng.below(t));
            if (a == b || deg[a] >= cap || deg[b] >= cap) continue;
            dem.add_edge(a, b);
            ++deg[a];
            ++deg[b];
        }
        CompleteRouting route = route_in_complete(dem, q);
        check(route.paths.size() == static_cast<std::size_t>(dem.m()), "one path per demand");
        std::map<Edge, long long> edge_load;
        std::vector<long long> middle(t, 0);
        for (std::size_t i = 0; i < route.paths.size(); ++i) {
            const auto& p = route.paths[i];
            check(p.size() == 2 || p.size() == 3, "direct or one-bend path");
            check(make_edge(p.front(), p.back()) == dem.edges()[i], "endpoints match demand");
            for (std::size_t j = 0; j + 1 < p.size(); ++j)
                ++edge_load[make_edge(p[j], p[j + 1])];
            if (p.size() == 3) ++middle[p[1]];
        }
        for (const auto& [e, l] : edge_load) check(l <= 18 * q, "edge load <= 18q");
        for (int v = 0; v < t; ++v) check(middle[v] <= q * t, "middle load <= qt");
    }
    return "pins 1 and 1/3; 100 LPs with eps <= 1/|W| and integral congestion <= D; "
           "100 clique routings within load bounds";
}

std::string criterion_flow_witness(const AcceptanceOptions& opt) {
    std::vector<std::pair<std::string, Graph>> cases;
    Graph k2(2);
    k2.add_edge(0, 1);
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);
    cases.push_back({"K_2", k2});
    cases.push_back({"P_3", p3});
    cases.push_back({"K_3", k3});
    std::vector<Rational> pins = {Rational(1, 3), Rational(1, 7), Rational(1, 5)};
    std::ostringstream det;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::vector<int> all(cases[i].second.n());
        std::iota(all.begin(), all.end(), 0);
        FlowCertOptions fopt;
        fopt.seed = derive_seed(opt.seed, 7);
        FlowWitness fw = flow_capacity_certificate(cases[i].second, all, fopt);
        check(fw.eps == pins[i], cases[i].first + ": eps pin");
        check(fw.fully_certified, cases[i].first + ": full certification");
        if (i) det << "; ";
        det << cases[i].first << " eps " << to_string(fw.eps) << ", |X| "
            << fw.witness.set.size() << ", " << fw.matchings_checked << " matchings";
    }
    return det.str();
}

std::string criterion_indsub_identities(const AcceptanceOptions& opt) {
    Rng rng(derive_seed(opt.seed, 8));
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + trial % 3;
        std::map<std::string, Rational> table;
        for (const Graph& h : unlabeled_graphs(k)) {
            long long num = static_cast<long long>(rng.below(13)) - 6;
            long long den = 1 + static_cast<long long>(rng.below(4));
            table[canonical_form(h)] = Rational(num, den);
        }
        GraphInvariant phi = GraphInvariant::from_table(k, table);
        int n = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(11 - k)));
        Graph g = random_gnp_rng(rng, n, 0.4);
        check(phi_sub_identity_check(phi, g), "induced-count identity");
    }

    std::vector<Graph> pats;
    {
        Graph k2(2);
        k2.add_edge(0, 1);
        Graph p3(3);
        p3.add_edge(0, 1);
        p3.add_edge(1, 2);
        Graph k3(3);
        k3.add_edge(0, 1);
        k3.add_edge(1, 2);
        k3.add_edge(0, 2);
        Graph c4(4);
        c4.add_edge(0, 1);
        c4.add_edge(1, 2);
        c4.add_edge(2, 3);
        c4.add_edge(0, 3);
        pats = {k2, p3, k3, c4};
    }
    for (int trial = 0; trial < 50; ++trial) {
        const Graph& h = pats[trial % 4];
        int k = h.n();
        int n = 6 + static_cast<int>(rng.below(7));
        ColoredGraph host;
        host.graph = random_gnp_rng(rng, n, 0.5);
        host.color.resize(n);
        for (int v = 0; v < n; ++v) host.color[v] = static_cast<int>(rng.below(k));
        ColoredGraph pre = colsub_preprocess(h, host);
        GraphInvariant phi = GraphInvariant::indicator_of(h);
        long long direct = count_colorful_sub(h, pre);
        long long via = colsub_via_indsub(h, pre, phi, opt.jobs);
        check(direct == via, "colorful count reduction equality");
    }

    for (int k = 1; k <= 4; ++k) {
        GraphInvariant one = GraphInvariant::constant_one(k);
        for (const Graph& h : all_graphs(k))
            if (h.m() >= 1)
                check(alternating_enumerator(one, h) == 0, "constant invariant annihilated");
    }
    return "50 identity checks, 50 colorful-count equalities, constant invariant vanishes on "
           "every edged pattern up to k = 4";
}

std::string criterion_random_experiment(const AcceptanceOptions& opt) {
    ExperimentReport sure = random_linkage_experiment(8, 1.0, std::nullopt, 1, 50,
                                                      derive_seed(opt.seed, 91));
    check(sure.successes == sure.trials, "p = 1 always routes with r = 1");
    ExperimentReport never = random_linkage_experiment(6, 0.0, std::nullopt, 1, 50,
                                                       derive_seed(opt.seed, 92));
    check(never.successes == 0 && never.failures == never.trials, "p = 0 never routes");
    ExperimentReport big = random_linkage_experiment(24, 0.5, std::nullopt, 4, 200,
                                                     derive_seed(opt.seed, 93), 2'000'000,
                                                     opt.jobs);
    check(big.trials == 200, "trial count");
    std::ostringstream det;
    det << "k=24 p=0.5 r=4: rate " << big.rate << ", Wilson [" << big.wilson_low << ", "
        << big.wilson_high << "] over " << big.trials - big.inconclusive << " decided trials";
    return det.str();
}

std::string criterion_degree3_transform(const AcceptanceOptions& opt) {
    Degree3Network d3 = degree3_transform(build_benes(2, true));
    check(d3.graph.max_degree() == 3, "max degree 3");
    CertificationResult cert = is_matching_linked(d3.graph, d3.inputs, 5'000'000, opt.jobs);
    check(cert.status == CertStatus::Certified, "relocated inputs matching-linked");
    std::ostringstream det;
    det << d3.graph.n() << " vertices, degree 3, " << cert.matchings_checked
        << " maximal matchings certified";
    return det.str();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    struct Entry {
        int id;
        const char* name;
        std::string (*fn)(const AcceptanceOptions&);
    };
    const Entry entries[] = {
        {1, "benes-structure", criterion_benes_structure},
        {2, "benes-routing", criterion_benes_routing},
        {3, "grid-constants", criterion_grid_constants},
        {4, "reduction-end-to-end", criterion_reduction_end_to_end},
        {5, "oracle-equivalence", criterion_oracle_equivalence},
        {6, "flow-lp", criterion_flow_lp},
        {7, "flow-witness", criterion_flow_witness},
        {8, "indsub-identities", criterion_indsub_identities},
        {9, "random-experiment", criterion_random_experiment},
        {10, "degree3-transform", criterion_degree3_transform},
    };
    std::vector<CriterionResult> out;
    for (const Entry& e : entries) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end())
            continue;
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        auto start = std::chrono::steady_clock::now();
        try {
            r.detail = e.fn(opt);
            r.passed = true;
        } catch (const std::exception& ex) {
            r.passed = false;
            r.detail = ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace linkagelab
