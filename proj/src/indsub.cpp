#include "linkagelab/indsub.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <utility>

#include "linkagelab/util.hpp"

namespace linkagelab {

namespace {

// Upper-triangle adjacency bits of g relabeled by perm, pairs in (i, j)
// lexicographic order.
std::string adjacency_string(const Graph& g, const std::vector<int>& perm) {
    int n = g.n();
    std::string s;
    s.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.push_back(g.has_edge(perm[i], perm[j]) ? '1' : '0');
    return s;
}

// Yields index vectors c with c[0] < ... < c[k-1] over [0, n).
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        fn(static_cast<const std::vector<int>&>(c));
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

long long binomial_clamped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    long long v = 1;
    for (int i = 1; i <= k; ++i) {
        v = v * (n - k + i) / i;
        if (v > cap) return cap + 1;
    }
    return v;
}

Graph induced(const Graph& g, const std::vector<int>& verts) {
    int k = static_cast<int>(verts.size());
    Graph s(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.has_edge(verts[i], verts[j])) s.add_edge_unchecked(i, j);
    return s;
}

}  // namespace

std::string canonical_form(const Graph& g) {
    envelope(g.n() <= 8, "canonical_form: n <= 8");
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best = adjacency_string(g, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
        best = std::min(best, adjacency_string(g, perm));
    return best;
}

std::vector<Graph> all_graphs(int k) {
    require(k >= 1, "all_graphs: k >= 1");
    envelope(k <= 5, "all_graphs: k <= 5");
    int pairs = k * (k - 1) / 2;
    std::vector<Graph> out;
    out.reserve(1u << pairs);
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
        Graph g(k);
        int b = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j, ++b)
                if (mask >> b & 1) g.add_edge_unchecked(i, j);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Graph> unlabeled_graphs(int k) {
    std::map<std::string, Graph> classes;
    for (Graph& g : all_graphs(k)) {
        std::string can = canonical_form(g);
        if (!classes.count(can)) classes.emplace(std::move(can), std::move(g));
    }
    std::vector<Graph> out;
    out.reserve(classes.size());
    for (auto& [can, g] : classes) out.push_back(std::move(g));
    return out;
}

long long automorphism_count(const Graph& g) {
    envelope(g.n() <= 8, "automorphism_count: n <= 8");
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        for (const auto& [u, v] : g.edges())
            if (!g.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        // A permutation mapping edges into edges is bijective on them.
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

long long count_sub(const Graph& h, const Graph& g) {
    int k = h.n();
    envelope(k <= 5, "count_sub: pattern <= 5 vertices");
    if (k > g.n()) return 0;
    envelope(binomial_clamped(g.n(), k, 2'000'000) <= 2'000'000, "count_sub: C(n, k) <= 2e6");
    long long embeddings = 0;
    std::vector<int> perm(k);
    for_each_subset(g.n(), k, [&](const std::vector<int>& sub) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (const auto& [u, v] : h.edges())
                if (!g.has_edge(sub[perm[u]], sub[perm[v]])) {
                    ok = false;
                    break;
                }
            if (ok) ++embeddings;
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    long long aut = automorphism_count(h);
    check(embeddings % aut == 0, "embedding count not divisible by automorphism count");
    return embeddings / aut;
}

GraphInvariant GraphInvariant::from_table(int k, std::map<std::string, Rational> table) {
    for (const auto& [can, value] : table)
        require(static_cast<int>(can.size()) == k * (k - 1) / 2 &&
                    can.find_first_not_of("01") == std::string::npos,
                "table key is not a canonical form of the right arity");
    return GraphInvariant(k, "table", [table = std::move(table)](const Graph& g) {
        auto it = table.find(canonical_form(g));
        return it == table.end() ? Rational(0) : it->second;
    });
}

GraphInvariant GraphInvariant::indicator_clique(int k) {
    return GraphInvariant(k, "clique", [k](const Graph& g) {
        return Rational(g.m() == k * (k - 1) / 2 ? 1 : 0);
    });
}

GraphInvariant GraphInvariant::indicator_edgeless(int k) {
    return GraphInvariant(k, "edgeless",
                          [](const Graph& g) { return Rational(g.m() == 0 ? 1 : 0); });
}

GraphInvariant GraphInvariant::indicator_connected(int k) {
    return GraphInvariant(k, "connected",
                          [](const Graph& g) { return Rational(is_connected(g) ? 1 : 0); });
}

GraphInvariant GraphInvariant::indicator_even_edges(int k) {
    return GraphInvariant(k, "even-edges",
                          [](const Graph& g) { return Rational(g.m() % 2 == 0 ? 1 : 0); });
}

GraphInvariant GraphInvariant::indicator_of(const Graph& h) {
    return GraphInvariant(h.n(), "indicator", [can = canonical_form(h)](const Graph& g) {
        return Rational(canonical_form(g) == can ? 1 : 0);
    });
}

GraphInvariant GraphInvariant::constant_one(int k) {
    return GraphInvariant(k, "one", [](const Graph&) { return Rational(1); });
}

Rational alternating_enumerator(const GraphInvariant& phi, const Graph& h) {
    require(phi.k() == h.n(), "alternating_enumerator: arity must match |V(h)|");
    const auto& edges = h.edges();
    int me = static_cast<int>(edges.size());
    envelope(me <= 24, "alternating_enumerator: |E(h)| <= 24");
    Rational total = 0;
    for (unsigned long long mask = 0; mask < (1ull << me); ++mask) {
        Graph sub(h.n());
        int bits = 0;
        for (int b = 0; b < me; ++b)
            if (mask >> b & 1) {
                sub.add_edge_unchecked(edges[b].first, edges[b].second);
                ++bits;
            }
        Rational v = phi.eval(sub);
        if (bits & 1)
            total -= v;
        else
            total += v;
    }
    if (me & 1) total = -total;
    return total;
}

Rational count_indsub(const GraphInvariant& phi, const Graph& g, long long budget) {
    int k = phi.k();
    if (k > g.n()) return Rational(0);
    envelope(binomial_clamped(g.n(), k, budget) <= budget, "count_indsub: C(n, k) over budget");
    Rational total = 0;
    for_each_subset(g.n(), k,
                    [&](const std::vector<int>& sub) { total += phi.eval(induced(g, sub)); });
    return total;
}

bool phi_sub_identity_check(const GraphInvariant& phi, const Graph& g) {
    envelope(phi.k() <= 5, "phi_sub_identity_check: k <= 5");
    Rational lhs = count_indsub(phi, g);
    Rational rhs = 0;
    for (const Graph& h : unlabeled_graphs(phi.k()))
        rhs += alternating_enumerator(phi, h) * Rational(count_sub(h, g));
    return lhs == rhs;
}

ColoredGraph delete_by_colors(const ColoredGraph& g, const std::vector<int>& xcolors,
                              const std::vector<std::pair<int, int>>& ypairs) {
    int n = g.graph.n();
    require(static_cast<int>(g.color.size()) == n, "colored graph missing colors");
    std::set<int> dropv(xcolors.begin(), xcolors.end());
    std::set<std::pair<int, int>> drope;
    for (auto [a, b] : ypairs) drope.insert(std::minmax(a, b));

    std::vector<int> newid(n, -1);
    int kept = 0;
    for (int v = 0; v < n; ++v)
        if (!dropv.count(g.color[v])) newid[v] = kept++;

    ColoredGraph out;
    out.graph = Graph(kept);
    out.color.reserve(kept);
    for (int v = 0; v < n; ++v)
        if (newid[v] >= 0) out.color.push_back(g.color[v]);
    for (const auto& [u, v] : g.graph.edges()) {
        if (newid[u] < 0 || newid[v] < 0) continue;
        if (drope.count(std::minmax(g.color[u], g.color[v]))) continue;
        out.graph.add_edge_unchecked(newid[u], newid[v]);
    }
    out.graph.normalize();
    return out;
}

ColoredGraph colsub_preprocess(const Graph& h, const ColoredGraph& g) {
    int k = h.n();
    for (int c : g.color) require(c >= 0 && c < k, "host color out of pattern range");
    std::vector<std::pair<int, int>> ypairs;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b)
            if (a == b || !h.has_edge(a, b)) ypairs.push_back({a, b});
    return delete_by_colors(g, {}, ypairs);
}

long long colsub_via_indsub(const Graph& h, const ColoredGraph& g, const GraphInvariant& phi,
                            int jobs) {
    int k = h.n();
    require(phi.k() == k, "invariant arity must match |V(h)|");
    for (int c : g.color) require(c >= 0 && c < k, "host color out of pattern range");
    for (const auto& [u, v] : g.graph.edges())
        require(g.color[u] != g.color[v] && h.has_edge(g.color[u], g.color[v]),
                "host not preprocessed: edge with color pair outside E(h)");
    Rational phi_hat = alternating_enumerator(phi, h);
    require(phi_hat != 0, "alternating enumerator vanishes on h");

    const auto& hedges = h.edges();
    int me = static_cast<int>(hedges.size());
    envelope(k + me <= 24, "colsub_via_indsub: 2^(|V(h)|+|E(h)|) terms");
    long long terms = 1ll << (k + me);
    std::vector<Rational> value(terms);
    parallel_for(terms, jobs, [&](long long t) {
        unsigned long long vmask = static_cast<unsigned long long>(t) & ((1ull << k) - 1);
        unsigned long long emask = static_cast<unsigned long long>(t) >> k;
        std::vector<int> xcolors;
        for (int c = 0; c < k; ++c)
            if (vmask >> c & 1) xcolors.push_back(c);
        std::vector<std::pair<int, int>> ypairs;
        for (int b = 0; b < me; ++b)
            if (emask >> b & 1) ypairs.push_back(hedges[b]);
        ColoredGraph cut = delete_by_colors(g, xcolors, ypairs);
        Rational f = count_indsub(phi, cut.graph);
        int bits = std::popcount(vmask) + std::popcount(emask);
        value[t] = (bits & 1) ? -f : f;
    });
    Rational total = 0;
    for (const Rational& v : value) total += v;
    Rational count = total / phi_hat;
    check(denominator(count) == 1, "reduced colorful count is not an integer");
    Integer num = numerator(count);
    check(num >= 0 && num <= 4'000'000'000'000'000'000ll, "colorful count out of range");
    return num.convert_to<long long>();
}

}  // namespace linkagelab
