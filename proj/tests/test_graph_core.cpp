#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "linkagelab/blowup.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/util.hpp"

using namespace linkagelab;

TEST_CASE("graph basics") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    CHECK(g.n() == 4);
    CHECK(g.m() == 2);
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(1, 2));
    CHECK(!g.has_edge(0, 2));
    CHECK(!g.has_edge(3, 3));
    CHECK(g.degree(1) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.edges()[1] == Edge{1, 2});
    CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
}

TEST_CASE("multigraph keeps parallel edges") {
    Multigraph m(3);
    m.add_edge(0, 1);
    m.add_edge(1, 0);
    m.add_edge(1, 2);
    CHECK(m.m() == 3);
    CHECK(m.degree(1) == 3);
    CHECK(m.edges()[0] == m.edges()[1]);
    CHECK_THROWS_AS(m.add_edge(1, 1), std::invalid_argument);
}

TEST_CASE("connectivity and distances") {
    Graph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(is_connected(path));
    auto d = bfs_distances(path, 0);
    CHECK(d == std::vector<int>{0, 1, 2, 3});

    Graph split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK(!is_connected(split));
    CHECK(bfs_distances(split, 0)[3] == -1);

    CHECK(is_connected(Graph(1)));
}

TEST_CASE("graph file round trip") {
    Rng rng(7);
    Graph g(50);
    for (int u = 0; u < 50; ++u)
        for (int v = u + 1; v < 50; ++v)
            if (rng.coin(0.1)) g.add_edge(u, v);
    std::vector<int> color(50), inputs = {3, 1, 4}, outputs = {9, 2};
    for (int v = 0; v < 50; ++v) color[v] = static_cast<int>(rng.below(5));

    std::ostringstream out;
    write_graph_file(out, g, &color, &inputs, &outputs);
    std::istringstream in(out.str());
    GraphFile back = read_graph_file(in);
    CHECK(back.graph.same_edge_set(g));
    CHECK(back.color == color);
    CHECK(back.inputs == inputs);
    CHECK(back.outputs == outputs);
}

TEST_CASE("graph file parse errors carry line numbers") {
    std::istringstream missing("e 0 1\n");
    CHECK_THROWS_AS(read_graph_file(missing), ParseError);

    std::istringstream bad_edge("p 2 1\ne 0 5\n");
    try {
        read_graph_file(bad_edge);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    std::istringstream empty("p 0 0\n");
    GraphFile gf = read_graph_file(empty);
    CHECK(gf.graph.n() == 0);
    CHECK(gf.graph.m() == 0);

    std::istringstream k3("p 3 3\ne 0 1\ne 1 2\ne 0 2\n");
    GraphFile t = read_graph_file(k3);
    CHECK(t.graph.n() == 3);
    CHECK(t.graph.m() == 3);
}

TEST_CASE("matching file round trip and validation") {
    Matching m = {{0, 3}, {1, 5}};
    std::ostringstream out;
    write_matching_file(out, m);
    std::istringstream in(out.str());
    CHECK(read_matching_file(in) == m);

    CHECK_NOTHROW(require_matching(m, 6));
    CHECK_THROWS_AS(require_matching(m, 5), std::invalid_argument);
    Matching repeated = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(require_matching(repeated, 3), std::invalid_argument);
}

TEST_CASE("blowup structure") {
    Graph h(3);
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    for (int t = 1; t <= 3; ++t) {
        Graph b = blowup(h, t);
        BlowupMap bm{t};
        CHECK(b.n() == 3 * t);
        // t-clique per block, complete bipartite join across edges of h.
        int expect = 3 * t * (t - 1) / 2 + h.m() * t * t;
        CHECK(b.m() == expect);
        for (int a = 0; a < b.n(); ++a)
            for (int c = 0; c < b.n(); ++c) {
                CHECK(blowup_adjacent(h, t, a, c) == b.has_edge(a, c));
                if (a != c && bm.base(a) == bm.base(c)) CHECK(b.has_edge(a, c));
            }
        CHECK(bm.encode(bm.base(3 * t - 1), bm.clone(3 * t - 1)) == 3 * t - 1);
    }
}

TEST_CASE("projection drops intra-block edges") {
    // 3 blocks, t = 2: ids v*2+i.
    Matching m = {{0, 2}, {1, 4}, {3, 5}};  // bases (0,1), (0,2), (1,2)
    Multigraph p = project(m, 3, 2);
    CHECK(p.m() == 3);
    CHECK(p.edges()[0] == Edge{0, 1});
    CHECK(p.edges()[1] == Edge{0, 2});
    CHECK(p.edges()[2] == Edge{1, 2});

    Matching intra = {{0, 1}};  // both clones of base 0
    CHECK(project(intra, 3, 2).m() == 0);
}

TEST_CASE("greedy edge coloring") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng.below(8));
        Multigraph g(n);
        for (int e = 0; e < 2 * n; ++e) {
            int a = static_cast<int>(rng.below(n)), b = static_cast<int>(rng.below(n));
            if (a != b) g.add_edge(a, b);
        }
        auto classes = greedy_edge_color(g);
        CHECK(static_cast<int>(classes.size()) <= std::max(1, 2 * g.max_degree() - 1));
        std::size_t covered = 0;
        for (const auto& cls : classes) {
            covered += cls.size();
            std::set<int> seen;
            for (auto [u, v] : cls) {
                CHECK(!seen.count(u));
                CHECK(!seen.count(v));
                seen.insert(u);
                seen.insert(v);
            }
        }
        CHECK(covered == static_cast<std::size_t>(g.m()));
    }
}

TEST_CASE("linkage verification") {
    Graph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    auto adj = [&](int a, int b) { return path.has_edge(a, b); };

    Linkage l;
    l.matching = {{0, 3}};
    l.paths = {{0, 1, 2, 3}};
    CHECK_NOTHROW(verify_linkage(l, 4, adj, 1));
    CHECK(max_congestion(4, l) == 1);
    CHECK(linkage_congestion(4, l) == std::vector<int>{1, 1, 1, 1});

    Linkage wrong_ends = l;
    wrong_ends.paths = {{1, 2, 3}};
    CHECK_THROWS_AS(verify_linkage(wrong_ends, 4, adj, 1), VerificationError);

    Linkage skip = l;
    skip.paths = {{0, 2, 3}};
    CHECK_THROWS_AS(verify_linkage(skip, 4, adj, 1), VerificationError);

    Linkage repeat;
    repeat.matching = {{0, 1}};
    repeat.paths = {{0, 1, 0, 1}};
    CHECK_THROWS_AS(verify_linkage(repeat, 4, adj, 2), VerificationError);

    Linkage crossing;
    crossing.matching = {{0, 2}, {1, 3}};
    crossing.paths = {{0, 1, 2}, {1, 2, 3}};
    CHECK_THROWS_AS(verify_linkage(crossing, 4, adj, 1), VerificationError);
    CHECK_NOTHROW(verify_linkage(crossing, 4, adj, 2));
}

TEST_CASE("topological minor check") {
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    auto adj = [&](int a, int b) { return k4.has_edge(a, b); };

    Linkage star;
    star.matching = {{0, 1}, {0, 2}};
    star.paths = {{0, 1}, {0, 3, 2}};
    CHECK_NOTHROW(verify_topological_minor(star, 4, adj));

    // Reversed path orientation is accepted.
    Linkage rev = star;
    rev.paths[1] = {2, 3, 0};
    CHECK_NOTHROW(verify_topological_minor(rev, 4, adj));

    // A shared vertex that is internal to one of the paths is rejected.
    Linkage bad;
    bad.matching = {{0, 1}, {3, 1}};
    bad.paths = {{0, 2, 1}, {3, 2, 1}};
    CHECK_THROWS_AS(verify_topological_minor(bad, 4, adj), VerificationError);
}

TEST_CASE("congested linkage lifts to an uncongested one") {
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    int q = 2;
    BlowupMap bm{q};
    // Two demands between blocks 0 and 2; both base paths cross block 1.
    Matching m = {{bm.encode(0, 0), bm.encode(2, 0)}, {bm.encode(0, 1), bm.encode(2, 1)}};
    std::vector<std::vector<int>> base_paths = {{0, 1, 2}, {0, 1, 2}};
    Linkage lifted = lift_congested_linkage(p3, q, m, base_paths);
    BlowupMap wide{2 * q};
    CHECK(lifted.matching.size() == 2);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(lifted.matching[i].first ==
              wide.encode(bm.base(m[i].first), bm.clone(m[i].first)));
        CHECK(lifted.matching[i].second ==
              wide.encode(bm.base(m[i].second), bm.clone(m[i].second)));
    }
    verify_linkage(lifted, 3 * 2 * q,
                   [&](int a, int b) { return blowup_adjacent(p3, 2 * q, a, b); }, 1);

    // A third path through block 1 would need three internal clones.
    Matching m3 = m;
    m3.push_back({bm.encode(0, 0), bm.encode(2, 0)});
    std::vector<std::vector<int>> paths3 = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    CHECK_THROWS_AS(lift_congested_linkage(p3, q, m3, paths3), std::exception);
}

TEST_CASE("rng determinism and ranges") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(7);
    for (int i = 0; i < 200; ++i) CHECK(c.below(13) < 13);
    std::vector<int> v(20);
    std::iota(v.begin(), v.end(), 0);
    Rng d(9);
    d.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> id(20);
    std::iota(id.begin(), id.end(), 0);
    CHECK(sorted == id);
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("parallel for covers every index once") {
    for (int jobs : {1, 4}) {
        std::vector<std::atomic<int>> hits(257);
        for (auto& h : hits) h = 0;
        parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h == 1);
    }
}
