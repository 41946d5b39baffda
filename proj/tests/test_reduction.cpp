#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "linkagelab/blowup.hpp"
#include "linkagelab/reduction.hpp"
#include "linkagelab/util.hpp"

using namespace linkagelab;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

// All 3^n assignments, filtered; the reference for every counter here.
long long colorings_by_odometer(const Graph& g) {
    int n = g.n();
    std::vector<int> val(n, 0);
    long long count = 0;
    for (;;) {
        bool ok = true;
        for (auto [u, v] : g.edges()) ok = ok && val[u] != val[v];
        if (ok) ++count;
        int pos = n - 1;
        while (pos >= 0 && val[pos] == 2) val[pos--] = 0;
        if (pos < 0) return count;
        ++val[pos];
    }
}

long long colorful_by_odometer(const Graph& h, const ColoredGraph& x) {
    std::vector<std::vector<int>> classes(h.n());
    for (int v = 0; v < x.graph.n(); ++v) classes[x.color[v]].push_back(v);
    std::vector<std::size_t> pick(h.n(), 0);
    long long count = 0;
    for (;;) {
        bool ok = true;
        for (int c = 0; c < h.n() && ok; ++c) ok = !classes[c].empty();
        if (ok) {
            for (auto [a, b] : h.edges()) {
                if (!x.graph.has_edge(classes[a][pick[a]], classes[b][pick[b]])) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++count;
        } else {
            return 0;
        }
        int pos = h.n() - 1;
        while (pos >= 0 && pick[pos] + 1 == classes[pos].size()) pick[pos--] = 0;
        if (pos < 0) return count;
        ++pick[pos];
    }
}

}  // namespace

TEST_CASE("proper 3-coloring counts") {
    CHECK(count_3colorings(Graph(2)) == 9);
    CHECK(count_3colorings(complete(3)) == 6);
    CHECK(count_3colorings(complete(4)) == 0);
    CHECK(count_3colorings(cycle(5)) == 30);  // (3-1)^5 - 2
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(count_3colorings(p3) == 12);

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng.below(7));
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(0.4)) g.add_edge(u, v);
        CHECK(count_3colorings(g) == colorings_by_odometer(g));
    }
    CHECK_THROWS_AS(count_3colorings(Graph(19)), EnvelopeError);
}

TEST_CASE("3-assignment counts") {
    auto inst = [](int n, std::vector<Edge> eq, std::vector<Edge> neq) {
        ThreeAssignmentInstance out;
        out.graph = Graph(n);
        for (auto [u, v] : eq) out.graph.add_edge(u, v);
        for (auto [u, v] : neq) out.graph.add_edge(u, v);
        out.eq_edges = std::move(eq);
        out.neq_edges = std::move(neq);
        return out;
    };
    CHECK(count_3assignments(inst(2, {{0, 1}}, {})) == 3);
    CHECK(count_3assignments(inst(2, {}, {{0, 1}})) == 6);
    CHECK(count_3assignments(inst(3, {{0, 1}, {1, 2}}, {})) == 3);
    // Equality chain closed by a disequality is unsatisfiable.
    CHECK(count_3assignments(inst(3, {{0, 1}, {1, 2}}, {{0, 2}})) == 0);
    CHECK(count_3assignments(inst(3, {{0, 1}}, {{1, 2}, {0, 2}})) == 6);

    // All-disequality instances are plain colorings.
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng.below(6));
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(0.5)) g.add_edge(u, v);
        ThreeAssignmentInstance all;
        all.graph = g;
        all.neq_edges = g.edges();
        CHECK(count_3assignments(all) == count_3colorings(g));
    }

    ThreeAssignmentInstance bad;
    bad.graph = complete(3);
    bad.eq_edges = {{0, 1}};
    bad.neq_edges = {{1, 2}};  // edge {0,2} unlabeled
    CHECK_THROWS_AS(count_3assignments(bad), std::invalid_argument);
}

TEST_CASE("rerouted instances preserve counts") {
    LinkedSetWitness w = benes_inputs_witness(2);
    Rng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + static_cast<int>(rng.below(3));  // fits the four inputs
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(0.6)) g.add_edge(u, v);
        EmbeddedInstance emb = reroute(g, w);
        CHECK(!emb.dummy);
        CHECK(emb.t <= 8 * w.q);
        CHECK(count_3assignments(emb.instance) == count_3colorings(g));
        CHECK(emb.minor_model.matching.size() == g.edges().size());
        // Model paths join the placed endpoints inside the blowup host.
        verify_topological_minor(emb.minor_model, w.base.n() * emb.t, [&](int a, int b) {
            return blowup_adjacent(w.base, emb.t, a, b);
        });
        std::vector<int> sorted = emb.embed;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("oversized instances fall back to the dummy embedding") {
    LinkedSetWitness w = benes_inputs_witness(2);  // four linked inputs
    Graph g = cycle(5);
    PipelineReport rep = full_pipeline(g, w);
    CHECK(rep.dummy);
    CHECK(rep.router == "dummy");
    CHECK(rep.verdict == CountVerdict::Equal);
    REQUIRE(rep.colorings);
    CHECK(*rep.colorings == 30);

    EmbeddedInstance emb = dummy_instance(g, w.base);
    CHECK(emb.t == 3);  // ceil(5 / 2) clones
    CHECK(count_3assignments(emb.instance) == 30);
}

TEST_CASE("split-and-list by hand") {
    // K_2 against the pattern K_2: one instance vertex per block, all nine
    // value pairs minus the three equal ones across the single cross edge.
    Graph k2 = complete(2);
    EmbeddedInstance emb = dummy_instance(k2, k2);
    CHECK(emb.t == 1);
    CompatibilityGraph x = split_list(emb);
    CHECK(x.colored.graph.n() == 6);  // 3 assignments per block
    CHECK(x.colored.graph.m() == 6);  // unequal pairs
    CHECK(x.block_vertices[0].size() == 1);
    CHECK(x.parts[0].size() == 3);
    CHECK(x.part_offset[1] == 3);
    CHECK(count_colorful_sub(k2, x.colored) == 6);
}

TEST_CASE("colorful counting matches the odometer") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int k = 2 + static_cast<int>(rng.below(2));
        Graph h(k);
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v)
                if (rng.coin(0.7)) h.add_edge(u, v);
        int n = k + static_cast<int>(rng.below(7));
        ColoredGraph x;
        x.graph = Graph(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(0.4)) x.graph.add_edge(u, v);
        x.graph.normalize();
        x.color.resize(n);
        for (int v = 0; v < n; ++v) x.color[v] = static_cast<int>(rng.below(k));
        CHECK(count_colorful_sub(h, x) == colorful_by_odometer(h, x));
    }
}

TEST_CASE("colorful search respects its budget") {
    Graph h = complete(2);
    ColoredGraph x;
    x.graph = complete(10);
    x.color.resize(10);
    for (int v = 0; v < 10; ++v) x.color[v] = v % 2;
    x.graph.normalize();
    CHECK_THROWS_AS(count_colorful_sub(h, x, 3), EnvelopeError);
    CHECK(count_colorful_sub(h, x) == 25);
}

TEST_CASE("full pipeline on the three stock patterns") {
    std::vector<LinkedSetWitness> pats;
    pats.push_back(benes_inputs_witness(2));
    pats.push_back(benes_inputs_witness(3));
    pats.push_back(grid_diagonal_witness(4));
    Rng rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 3 + static_cast<int>(rng.below(6));
        Graph g(n);
        for (;;) {
            Graph cand(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (cand.degree(u) < 4 && cand.degree(v) < 4 && rng.coin(0.4))
                        cand.add_edge(u, v);
            if (is_connected(cand)) {
                g = cand;
                break;
            }
        }
        long long expect = count_3colorings(g);
        for (const auto& w : pats) {
            PipelineReport rep = full_pipeline(g, w);
            REQUIRE(rep.colorings);
            REQUIRE(rep.assignments);
            REQUIRE(rep.colorful);
            CHECK(*rep.colorings == expect);
            CHECK(rep.verdict == CountVerdict::Equal);
            long long limit = 1;
            for (int i = 0; i < rep.t; ++i) limit *= 3;
            CHECK(rep.compat_vertices <= rep.k * limit);
        }
    }
}

TEST_CASE("pipeline skips counts outside the envelope") {
    PipelineOptions opt;
    opt.colorful_budget = 2;  // starve only the colorful count
    PipelineReport rep = full_pipeline(complete(3), benes_inputs_witness(2), opt);
    CHECK(rep.colorings);
    CHECK(rep.assignments);
    CHECK(!rep.colorful);
    CHECK(rep.verdict == CountVerdict::Skipped);

    PipelineOptions off;
    off.verify_counts = false;
    PipelineReport quiet = full_pipeline(complete(3), benes_inputs_witness(2), off);
    CHECK(!quiet.colorings);
    CHECK(quiet.verdict == CountVerdict::Skipped);
}
