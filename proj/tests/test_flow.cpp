#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "linkagelab/blowup.hpp"
#include "linkagelab/flow.hpp"
#include "linkagelab/util.hpp"

using namespace linkagelab;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph random_connected(Rng& rng, int n, double p) {
    for (;;) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(p)) g.add_edge(u, v);
        if (is_connected(g)) return g;
    }
}

}  // namespace

TEST_CASE("path enumeration") {
    Graph p3 = path_graph(3);
    auto one = enumerate_paths(p3, 0, 2, 100);
    CHECK(one.size() == 1);
    CHECK(one[0] == std::vector<int>{0, 1, 2});

    auto two = enumerate_paths(complete(3), 0, 2, 100);
    CHECK(two.size() == 2);

    // C(n-2, k) k! simple paths between two fixed K_n vertices.
    auto k5 = enumerate_paths(complete(5), 0, 4, 1000);
    CHECK(k5.size() == 16);

    CHECK_THROWS_AS(enumerate_paths(complete(8), 0, 7, 10), EnvelopeError);
}

TEST_CASE("flow value pins") {
    CHECK(solve_concurrent_flow(complete(2), {0}).eps == Rational(1));
    CHECK(solve_concurrent_flow(complete(2), {0, 1}).eps == Rational(1, 3));
    CHECK(solve_concurrent_flow(path_graph(3), {0, 1, 2}).eps == Rational(1, 7));
    CHECK(solve_concurrent_flow(complete(3), {0, 1, 2}).eps == Rational(1, 5));
}

TEST_CASE("both pivot rules reach the same optimum") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 3 + static_cast<int>(rng.below(4));
        Graph h = random_connected(rng, n, 0.5);
        std::vector<int> w(n);
        std::iota(w.begin(), w.end(), 0);
        rng.shuffle(w);
        w.resize(2 + rng.below(n - 1));
        Rational a = solve_concurrent_flow(h, w, PivotRule::Bland).eps;
        Rational b = solve_concurrent_flow(h, w, PivotRule::Dantzig).eps;
        CHECK(a == b);
    }
}

TEST_CASE("flow value is invariant under relabeling") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng.below(3));
        Graph h = random_connected(rng, n, 0.5);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        Graph relabeled(n);
        for (auto [u, v] : h.edges()) relabeled.add_edge(perm[u], perm[v]);
        std::vector<int> w = {0, 1, 2};
        std::vector<int> wp;
        for (int v : w) wp.push_back(perm[v]);
        CHECK(solve_concurrent_flow(h, w).eps == solve_concurrent_flow(relabeled, wp).eps);
    }
}

TEST_CASE("adding edges never lowers the flow value") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng.below(3));
        Graph h = random_connected(rng, n, 0.4);
        std::vector<int> w = {0, 1};
        Rational before = solve_concurrent_flow(h, w).eps;
        Graph more = h;
        bool grew = false;
        for (int u = 0; u < n && !grew; ++u)
            for (int v = u + 1; v < n && !grew; ++v)
                if (!more.has_edge(u, v)) {
                    more.add_edge(u, v);
                    grew = true;
                }
        if (!grew) continue;
        CHECK(solve_concurrent_flow(more, w).eps >= before);
    }
}

TEST_CASE("terminals are sorted and must be distinct") {
    FlowSolution sol = solve_concurrent_flow(complete(3), {2, 0, 1});
    CHECK(sol.terminals == std::vector<int>{0, 1, 2});
    CHECK(sol.pairs.size() == 3);
    CHECK(sol.eps == Rational(1, 5));
    CHECK_THROWS_AS(solve_concurrent_flow(complete(3), {2, 0, 2, 1}), std::invalid_argument);
}

TEST_CASE("integral scaling") {
    for (const Graph& h : {complete(2), path_graph(3), complete(3), complete(4)}) {
        std::vector<int> w(h.n());
        std::iota(w.begin(), w.end(), 0);
        FlowSolution sol = solve_concurrent_flow(h, w);
        CongestedCliqueLinkage cl = integralize(sol);
        CHECK(Rational(cl.q, cl.D) == sol.eps);
        std::vector<long long> load(h.n(), 0);
        for (std::size_t pi = 0; pi < cl.pairs.size(); ++pi) {
            CHECK(static_cast<long long>(cl.paths[pi].size()) == cl.q);
            auto [i, j] = cl.pairs[pi];
            for (const auto& path : cl.paths[pi]) {
                CHECK(path.front() == sol.terminals[i]);
                CHECK(path.back() == sol.terminals[j]);
                for (int v : path) load[v] += 2;
            }
        }
        for (int v = 0; v < h.n(); ++v) CHECK(load[v] <= cl.D);
    }
}

TEST_CASE("complete-graph routing stays within its load bounds") {
    SUBCASE("small instances route directly") {
        Multigraph dem(5);
        dem.add_edge(0, 1);
        dem.add_edge(0, 1);
        dem.add_edge(2, 4);
        CompleteRouting r = route_in_complete(dem, 1);
        for (const auto& p : r.paths) CHECK(p.size() == 2);
    }
    SUBCASE("random demands") {
        Rng rng(43);
        for (int trial = 0; trial < 30; ++trial) {
            int t = 13 + static_cast<int>(rng.below(13));
            long long q = 1 + static_cast<long long>(rng.below(3));
            Multigraph dem(t);
            std::vector<long long> deg(t, 0);
            for (long long it = 0; it < q * t * t / 2; ++it) {
                int a = static_cast<int>(rng.below(t)), b = static_cast<int>(rng.below(t));
                if (a == b || deg[a] >= q * t || deg[b] >= q * t) continue;
                dem.add_edge(a, b);
                ++deg[a];
                ++deg[b];
            }
            CompleteRouting r = route_in_complete(dem, q);
            REQUIRE(r.paths.size() == static_cast<std::size_t>(dem.m()));
            std::map<Edge, long long> edge_load;
            std::vector<long long> middle(t, 0);
            for (std::size_t i = 0; i < r.paths.size(); ++i) {
                const auto& p = r.paths[i];
                REQUIRE((p.size() == 2 || p.size() == 3));
                CHECK(make_edge(p.front(), p.back()) == dem.edges()[i]);
                for (std::size_t j = 0; j + 1 < p.size(); ++j)
                    ++edge_load[make_edge(p[j], p[j + 1])];
                if (p.size() == 3) ++middle[p[1]];
            }
            for (const auto& [e, l] : edge_load) CHECK(l <= 18 * q);
            for (int v = 0; v < t; ++v) CHECK(middle[v] <= q * t);
        }
    }
}

TEST_CASE("flow-derived witness certifies and routes") {
    Graph k2 = complete(2);
    FlowWitness fw = flow_capacity_certificate(k2, {0, 1});
    CHECK(fw.eps == Rational(1, 3));
    CHECK(fw.q * 1 == fw.D * fw.eps);  // q = D * eps
    CHECK(fw.Dp == 18 * fw.D);
    CHECK(fw.witness.set.size() == 4);  // q * |W|^2
    CHECK(fw.fully_certified);
    CHECK(fw.matchings_checked == 3);
    CHECK(fw.bound.raw == fw.eps * 4 / 108);
    CHECK(fw.bound.value == 1);

    // The router answers arbitrary matchings on X, not just the sampled ones.
    const auto& w = fw.witness;
    Graph host = blowup(w.base, w.q);
    Matching m = {{w.set[0], w.set[3]}, {w.set[1], w.set[2]}};
    Linkage link = w.route(m);
    verify_linkage(link, host.n(),
                   [&](int a, int b) { return blowup_adjacent(w.base, w.q, a, b); }, 1);
}

TEST_CASE("zero-flow graphs yield the trivial witness") {
    Graph lonely(2);  // no edges: the pair has no connecting path
    FlowWitness fw = flow_capacity_certificate(lonely, {0, 1});
    CHECK(fw.eps == 0);
    CHECK(fw.bound.value == 1);
    CHECK(fw.fully_certified);
}
