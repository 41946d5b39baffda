#include "linkagelab/linkage.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace linkagelab {

namespace {

struct PathSearch {
    const Graph& g;
    std::vector<std::vector<int>> adj;   // sorted neighbor lists
    Matching edges;                      // in routing order
    std::vector<int> orig_index;
    std::vector<char> used;
    std::vector<std::vector<int>> paths;
    long long budget = 0;
    long long nodes = 0;
    bool exceeded = false;

    explicit PathSearch(const Graph& graph) : g(graph), adj(graph.n()) {
        for (int v = 0; v < g.n(); ++v) {
            adj[v] = g.neighbors(v);
            std::sort(adj[v].begin(), adj[v].end());
        }
    }

    bool reachable(int a, int b) const {
        std::vector<char> seen(g.n(), 0);
        std::queue<int> q;
        seen[a] = 1;
        q.push(a);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (v == b) return true;
                if (!seen[v] && !used[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        return false;
    }

    bool extend(std::size_t idx, int cur, int target) {
        for (int nb : adj[cur]) {
            if (exceeded) return false;
            if (++nodes > budget) {
                exceeded = true;
                return false;
            }
            if (nb == target) {
                paths[idx].push_back(target);
                if (route(idx + 1)) return true;
                paths[idx].pop_back();
                if (exceeded) return false;
                continue;
            }
            if (used[nb]) continue;
            used[nb] = 1;
            paths[idx].push_back(nb);
            if (extend(idx, nb, target)) return true;
            paths[idx].pop_back();
            used[nb] = 0;
            if (exceeded) return false;
        }
        return false;
    }

    bool route(std::size_t idx) {
        if (idx == edges.size()) return true;
        auto [a, b] = edges[idx];
        if (!reachable(a, b)) return false;
        paths[idx] = {a};
        if (extend(idx, a, b)) return true;
        paths[idx].clear();
        return false;
    }
};

}  // namespace

RouteResult find_linkage_backtracking(const Graph& g, const Matching& m, long long budget) {
    require_matching(m, g.n());
    require(budget >= 0, "budget must be >= 0");
    RouteResult res;
    if (m.empty()) {
        res.status = RouteStatus::Found;
        return res;
    }
    PathSearch s(g);
    // Shortest edges first; an unreachable pair refutes outright.
    std::vector<std::pair<int, int>> order;  // (distance, original index)
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto dist = bfs_distances(g, m[i].first);
        int d = dist[m[i].second];
        if (d < 0) {
            res.status = RouteStatus::NotFound;
            return res;
        }
        order.push_back({d, static_cast<int>(i)});
    }
    std::sort(order.begin(), order.end());
    s.used.assign(g.n(), 0);
    for (auto [d, i] : order) {
        s.edges.push_back(m[i]);
        s.orig_index.push_back(i);
        s.used[m[i].first] = s.used[m[i].second] = 1;
    }
    s.paths.resize(m.size());
    s.budget = budget;
    bool found = s.route(0);
    res.nodes = s.nodes;
    if (s.exceeded) {
        res.status = RouteStatus::BudgetExceeded;
        return res;
    }
    if (!found) {
        res.status = RouteStatus::NotFound;
        return res;
    }
    res.status = RouteStatus::Found;
    res.linkage.matching = m;
    res.linkage.paths.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) res.linkage.paths[s.orig_index[i]] = std::move(s.paths[i]);
    verify_linkage(res.linkage, g.n(), [&](int a, int b) { return g.has_edge(a, b); }, 1);
    return res;
}

namespace {

bool perfect_rec(std::vector<int>& pool, Matching& cur, const std::function<bool(const Matching&)>& fn) {
    if (pool.empty()) return fn(cur);
    int first = pool[0];
    for (std::size_t j = 1; j < pool.size(); ++j) {
        int partner = pool[j];
        std::vector<int> rest;
        for (std::size_t r = 1; r < pool.size(); ++r) {
            if (r != j) rest.push_back(pool[r]);
        }
        cur.push_back({first, partner});
        if (!perfect_rec(rest, cur, fn)) return false;
        cur.pop_back();
    }
    return true;
}

}  // namespace

void for_each_maximal_matching(const std::vector<int>& x, const std::function<bool(const Matching&)>& fn) {
    std::vector<int> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "set has repeated vertices");
    Matching cur;
    if (sorted.size() % 2 == 0) {
        if (sorted.empty()) {
            fn(cur);
            return;
        }
        perfect_rec(sorted, cur, fn);
        return;
    }
    for (std::size_t skip = 0; skip < sorted.size(); ++skip) {
        std::vector<int> rest;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i != skip) rest.push_back(sorted[i]);
        }
        if (!perfect_rec(rest, cur, fn)) return;
    }
}

long long count_maximal_matchings(int set_size) {
    require(set_size >= 0, "set size must be >= 0");
    const long long cap = 4'000'000'000'000'000'000LL;
    auto double_factorial = [&](int n) {
        long long r = 1;
        for (int i = n; i > 1; i -= 2) {
            if (r > cap / i) return cap;  // saturate instead of overflowing
            r *= i;
        }
        return r;
    };
    if (set_size % 2 == 0) return double_factorial(set_size - 1);
    long long rest = double_factorial(set_size - 2);
    if (rest > cap / set_size) return cap;
    return set_size * rest;
}

CertificationResult is_matching_linked(const Graph& g, const std::vector<int>& x,
                                       long long budget_per_matching, int jobs) {
    for (int v : x) require(v >= 0 && v < g.n(), "set vertex out of range");
    envelope(count_maximal_matchings(static_cast<int>(x.size())) <= 2'000'000,
             "too many maximal matchings to enumerate");
    std::vector<Matching> all;
    for_each_maximal_matching(x, [&](const Matching& m) {
        all.push_back(m);
        return true;
    });
    std::vector<RouteStatus> status(all.size(), RouteStatus::NotFound);
    std::vector<long long> nodes(all.size(), 0);
    std::atomic<bool> stop{false};
    parallel_for(all.size(), jobs, [&](std::size_t i) {
        if (stop.load()) {
            status[i] = RouteStatus::BudgetExceeded;  // skipped; resolved below
            return;
        }
        auto r = find_linkage_backtracking(g, all[i], budget_per_matching);
        status[i] = r.status;
        nodes[i] = r.nodes;
        if (r.status == RouteStatus::NotFound) stop.store(true);
    });
    CertificationResult out;
    out.matchings_checked = static_cast<long long>(all.size());
    out.nodes = std::accumulate(nodes.begin(), nodes.end(), 0LL);
    // Indices are claimed in increasing order, so everything below the first
    // NotFound ran to completion; skipped slots only exist above it.
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (status[i] == RouteStatus::NotFound) {
            out.status = CertStatus::Refuted;
            out.refuting = all[i];
            return out;
        }
    }
    for (auto st : status) {
        if (st == RouteStatus::BudgetExceeded) {
            out.status = CertStatus::Inconclusive;
            return out;
        }
    }
    out.status = CertStatus::Certified;
    return out;
}

namespace {

void all_simple_paths(const Graph& h, int from, int to, std::vector<int>& cur, std::vector<char>& on,
                      std::vector<std::vector<int>>& out) {
    int last = cur.back();
    if (last == to) {
        out.push_back(cur);
        return;
    }
    for (int nb : h.neighbors(last)) {
        if (on[nb]) continue;
        on[nb] = 1;
        cur.push_back(nb);
        all_simple_paths(h, from, to, cur, on, out);
        cur.pop_back();
        on[nb] = 0;
    }
}

std::vector<std::vector<int>> simple_paths_between(const Graph& h, int from, int to) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur{from};
    std::vector<char> on(h.n(), 0);
    on[from] = 1;
    all_simple_paths(h, from, to, cur, on, out);
    std::sort(out.begin(), out.end());
    return out;
}

struct AppendixInstance {
    std::vector<int> free_cap;                       // per block: t - endpoints there
    std::vector<std::size_t> cross;                  // indices into m of cross edges
    std::vector<std::vector<std::vector<int>>> options;  // candidate base paths per cross edge
};

bool appendix_prepare(const Graph& h, int t, const Matching& m, AppendixInstance& inst) {
    envelope(h.n() <= 4 && t >= 1 && t <= 2, "appendix oracle envelope is k <= 4, t <= 2");
    require_matching(m, h.n() * t);
    BlowupMap bm{t};
    inst.free_cap.assign(h.n(), t);
    for (auto [a, b] : m) {
        --inst.free_cap[bm.base(a)];
        --inst.free_cap[bm.base(b)];
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        int u = bm.base(m[i].first), v = bm.base(m[i].second);
        if (u == v) continue;  // intra-block edges route directly, no interaction
        auto paths = simple_paths_between(h, u, v);
        if (paths.empty()) return false;
        inst.cross.push_back(i);
        inst.options.push_back(std::move(paths));
    }
    return true;
}

bool appendix_assign(const AppendixInstance& inst, std::size_t i, std::vector<int>& load,
                     std::vector<std::size_t>& chosen) {
    if (i == inst.options.size()) return true;
    for (std::size_t c = 0; c < inst.options[i].size(); ++c) {
        const auto& p = inst.options[i][c];
        bool ok = true;
        std::size_t j = 1;
        for (; j + 1 < p.size(); ++j) {
            if (++load[p[j]] > inst.free_cap[p[j]]) {
                ok = false;
                ++j;
                break;
            }
        }
        if (ok) {
            chosen[i] = c;
            if (appendix_assign(inst, i + 1, load, chosen)) return true;
        }
        for (std::size_t r = 1; r < j; ++r) --load[p[r]];
    }
    return false;
}

}  // namespace

bool appendix_linkage_oracle(const Graph& h, int t, const Matching& m) {
    AppendixInstance inst;
    if (!appendix_prepare(h, t, m, inst)) return false;
    std::vector<int> load(h.n(), 0);
    std::vector<std::size_t> chosen(inst.options.size(), 0);
    return appendix_assign(inst, 0, load, chosen);
}

std::optional<Linkage> appendix_linkage_route(const Graph& h, int t, const Matching& m) {
    AppendixInstance inst;
    if (!appendix_prepare(h, t, m, inst)) return std::nullopt;
    std::vector<int> load(h.n(), 0);
    std::vector<std::size_t> chosen(inst.options.size(), 0);
    if (!appendix_assign(inst, 0, load, chosen)) return std::nullopt;

    BlowupMap bm{t};
    // Free clones per block: those not pinned by matching endpoints.
    std::vector<std::vector<int>> free_clones(h.n());
    {
        std::vector<std::vector<char>> pinned(h.n(), std::vector<char>(t, 0));
        for (auto [a, b] : m) {
            pinned[bm.base(a)][bm.clone(a)] = 1;
            pinned[bm.base(b)][bm.clone(b)] = 1;
        }
        for (int v = 0; v < h.n(); ++v) {
            for (int c = 0; c < t; ++c) {
                if (!pinned[v][c]) free_clones[v].push_back(c);
            }
        }
    }
    std::vector<int> next_free(h.n(), 0);
    Linkage out;
    out.matching = m;
    out.paths.resize(m.size());
    std::size_t cross_at = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto [a, b] = m[i];
        if (bm.base(a) == bm.base(b)) {
            out.paths[i] = {a, b};
            continue;
        }
        const auto& p = inst.options[cross_at][chosen[cross_at]];
        ++cross_at;
        std::vector<int> path{a};
        for (std::size_t j = 1; j + 1 < p.size(); ++j) {
            int w = p[j];
            path.push_back(bm.encode(w, free_clones[w][next_free[w]++]));
        }
        path.push_back(b);
        out.paths[i] = std::move(path);
    }
    verify_linkage(out, h.n() * t, [&](int x, int y) { return blowup_adjacent(h, t, x, y); }, 1);
    return out;
}

LinkedSetWitness benes_inputs_witness(int level) {
    auto net = build_benes(level, true);
    LinkedSetWitness w;
    w.base = net.graph;
    w.q = 1;
    w.set = net.inputs;
    w.router = "benes-inputs";
    std::vector<int> index_of(net.graph.n(), -1);
    for (std::size_t i = 0; i < net.inputs.size(); ++i) index_of[net.inputs[i]] = static_cast<int>(i);
    w.route = [level, index_of](const Matching& m) {
        Matching idx;
        for (auto [a, b] : m) {
            check(a >= 0 && a < static_cast<int>(index_of.size()) && index_of[a] >= 0, "endpoint not an input");
            check(b >= 0 && b < static_cast<int>(index_of.size()) && index_of[b] >= 0, "endpoint not an input");
            idx.push_back({index_of[a], index_of[b]});
        }
        return augmented_link(level, idx);
    };
    return w;
}

Graph grid_graph(int l) {
    require(l >= 1, "grid side must be >= 1");
    Graph g(l * l);
    for (int y = 0; y < l; ++y) {
        for (int x = 0; x < l; ++x) {
            if (x + 1 < l) g.add_edge(grid_id(l, x, y), grid_id(l, x + 1, y));
            if (y + 1 < l) g.add_edge(grid_id(l, x, y), grid_id(l, x, y + 1));
        }
    }
    g.normalize();
    return g;
}

Linkage grid_diagonal_linkage(int l, const Matching& diag_edges) {
    require_matching(diag_edges, l);
    auto h = grid_graph(l);
    Linkage out;
    for (auto e : diag_edges) {
        int a = std::min(e.first, e.second), b = std::max(e.first, e.second);
        std::vector<int> path;
        for (int x = a; x <= b; ++x) path.push_back(grid_id(l, x, a));
        for (int y = a + 1; y <= b; ++y) path.push_back(grid_id(l, b, y));
        out.matching.push_back({grid_id(l, a, a), grid_id(l, b, b)});
        out.paths.push_back(std::move(path));
    }
    verify_linkage(out, l * l, [&](int a, int b) { return h.has_edge(a, b); }, 2);
    return out;
}

Linkage grid_blowup2_linkage(int l, const Matching& diag_edges) {
    auto base = grid_diagonal_linkage(l, diag_edges);
    auto h = grid_graph(l);
    BlowupMap bm{2};
    std::vector<int> visits(l * l, 0);
    Linkage out;
    for (std::size_t i = 0; i < base.paths.size(); ++i) {
        const auto& p = base.paths[i];
        std::vector<int> path;
        for (std::size_t j = 0; j < p.size(); ++j) {
            bool is_end = j == 0 || j + 1 == p.size();
            int clone = is_end ? 0 : visits[p[j]];
            ++visits[p[j]];
            check(clone < 2, "grid path crossing exceeded two visits");
            path.push_back(bm.encode(p[j], clone));
        }
        out.matching.push_back(
            {bm.encode(base.matching[i].first, 0), bm.encode(base.matching[i].second, 0)});
        out.paths.push_back(std::move(path));
    }
    verify_linkage(out, l * l * 2, [&](int a, int b) { return blowup_adjacent(h, 2, a, b); }, 1);
    return out;
}

LinkedSetWitness grid_diagonal_witness(int level) {
    require(level >= 2, "grid witness needs side >= 2");
    LinkedSetWitness w;
    w.base = grid_graph(level);
    w.q = 2;
    int even = level % 2 == 0 ? level : level - 1;
    BlowupMap bm{2};
    for (int i = 0; i < even; ++i) w.set.push_back(bm.encode(grid_id(level, i, i), 0));
    w.router = "grid-diagonal";
    w.route = [level](const Matching& m) {
        BlowupMap inner{2};
        Matching idx;
        for (auto [a, b] : m) {
            check(inner.clone(a) == 0 && inner.clone(b) == 0, "endpoint not at clone 0");
            int ca = inner.base(a), cb = inner.base(b);
            check(ca % (level + 1) == 0 && cb % (level + 1) == 0, "endpoint not on the diagonal");
            idx.push_back({ca / (level + 1), cb / (level + 1)});
        }
        return grid_blowup2_linkage(level, idx);
    };
    return w;
}

LinkedSetWitness backtracking_witness(const Graph& h, int q, std::vector<int> set, long long budget) {
    LinkedSetWitness w;
    w.base = h;
    w.q = q;
    w.set = std::move(set);
    w.router = "backtracking";
    Graph blown = blowup(h, q);
    w.route = [blown, budget](const Matching& m) {
        auto r = find_linkage_backtracking(blown, m, budget);
        check(r.status != RouteStatus::NotFound, "witness routing refuted");
        check(r.status == RouteStatus::Found, "witness routing exceeded its budget");
        return r.linkage;
    };
    return w;
}

CapacityBound make_capacity_bound(const Rational& raw, const std::string& provenance, bool certified) {
    CapacityBound b;
    b.raw = raw;
    b.value = raw < 1 ? Rational(1) : raw;
    b.provenance = provenance;
    b.certified = certified;
    return b;
}

CapacityBound capacity_from_witness(int set_size, int q, const std::string& provenance, bool certified) {
    require(set_size >= 0 && q >= 1, "bad witness parameters");
    return make_capacity_bound(Rational(set_size, 3 * q), provenance, certified);
}

CapacityBound average_degree_bound(const Graph& h) {
    require(h.n() >= 1, "graph must be nonempty");
    Rational avg(2LL * h.m(), h.n());
    return make_capacity_bound(avg / 48, "average-degree", false);
}

CapacityBound benes_capacity(int level) {
    require(level >= 1, "level must be >= 1");
    return make_capacity_bound(Rational(1LL << level, 3), "benes-inputs", true);
}

CapacityBound grid_capacity(int level) {
    // The witness set is the largest even-size subset of the diagonal, which
    // is empty at level 1; the bound degrades to the trivial value there.
    require(level >= 1, "grid side must be >= 1");
    return make_capacity_bound(Rational(level - 1, 6), "grid-diagonal", true);
}

CybtPattern cybt_pattern(int k) {
    require(k >= 4, "pattern needs at least 4 vertices");
    int level = 1;
    while (2LL * (1LL << (level + 1)) * (level + 1) <= k) ++level;
    CybtPattern out;
    out.k = k;
    out.level = level;
    auto net = build_benes(level, true);
    out.pattern = Graph(k);
    for (auto [u, v] : net.graph.edges()) out.pattern.add_edge(u, v);
    out.pattern.normalize();
    out.bound = benes_capacity(level);
    int lg = 0;
    while ((1 << (lg + 1)) <= k) ++lg;
    // Upper bound on k / (12 log2 k): uses floor(log2 k) in the denominator.
    out.log_claim = Rational(k, 12 * lg);
    return out;
}

MaxSetResult max_matching_linked_set(const Graph& h, int t, long long budget_per_matching) {
    require(t >= 1, "blowup order must be positive");
    if (h.n() > 4 || t > 2) return find_linked_set_descent(h, t, budget_per_matching);
    int k = h.n();
    std::vector<std::vector<int>> mults;
    std::vector<int> cur(k, 0);
    std::function<void(int)> gen = [&](int v) {
        if (v == k) {
            mults.push_back(cur);
            return;
        }
        for (int c = 0; c <= t; ++c) {
            cur[v] = c;
            gen(v + 1);
        }
    };
    gen(0);
    std::stable_sort(mults.begin(), mults.end(), [](const auto& a, const auto& b) {
        return std::accumulate(a.begin(), a.end(), 0) > std::accumulate(b.begin(), b.end(), 0);
    });
    BlowupMap bm{t};
    for (const auto& mult : mults) {
        std::vector<int> set;
        for (int v = 0; v < k; ++v) {
            for (int c = 0; c < mult[v]; ++c) set.push_back(bm.encode(v, c));
        }
        bool ok = true;
        for_each_maximal_matching(set, [&](const Matching& m) {
            ok = appendix_linkage_oracle(h, t, m);
            return ok;
        });
        if (ok) {
            MaxSetResult res;
            res.set = set;
            res.exact_maximum = true;
            res.certified = true;
            return res;
        }
    }
    return {};  // unreachable: the empty set always certifies
}

MaxSetResult find_linked_set_descent(const Graph& h, int q, long long budget_per_matching) {
    Graph blown = blowup(h, q);
    std::vector<int> set(blown.n());
    std::iota(set.begin(), set.end(), 0);
    for (;;) {
        if (count_maximal_matchings(static_cast<int>(set.size())) > 200'000) {
            // Too many matchings to certify; shrink from the top.
            set.pop_back();
            continue;
        }
        auto cert = is_matching_linked(blown, set, budget_per_matching);
        if (cert.status == CertStatus::Certified) {
            MaxSetResult res;
            res.set = set;
            res.exact_maximum = false;
            res.certified = true;
            return res;
        }
        int victim = -1;
        if (cert.status == CertStatus::Refuted) {
            for (auto [a, b] : cert.refuting) victim = std::max(victim, std::max(a, b));
        } else {
            victim = set.back();
        }
        set.erase(std::remove(set.begin(), set.end(), victim), set.end());
    }
}

}  // namespace linkagelab
