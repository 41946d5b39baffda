#include "linkagelab/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace linkagelab {

long long count_3colorings(const Graph& g) {
    envelope(g.n() <= 18, "3-coloring count envelope is n <= 18");
    std::vector<int> color(g.n(), -1);
    std::function<long long(int)> rec = [&](int v) -> long long {
        if (v == g.n()) return 1;
        long long total = 0;
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (int nb : g.neighbors(v)) {
                if (nb < v && color[nb] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            total += rec(v + 1);
        }
        color[v] = -1;
        return total;
    };
    return rec(0);
}

namespace {

int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

void require_partition(const ThreeAssignmentInstance& inst) {
    auto all = inst.eq_edges;
    all.insert(all.end(), inst.neq_edges.begin(), inst.neq_edges.end());
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(),
            "eq and neq edge sets must be disjoint");
    auto declared = inst.graph.edges();
    std::sort(declared.begin(), declared.end());
    require(all == declared, "eq and neq edges must partition the edge set");
}

}  // namespace

long long count_3assignments(const ThreeAssignmentInstance& inst) {
    require_partition(inst);
    int n = inst.graph.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [u, v] : inst.eq_edges) parent[uf_find(parent, u)] = uf_find(parent, v);

    std::vector<int> id(n, -1);
    int components = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf_find(parent, v);
        if (id[r] < 0) id[r] = components++;
    }
    std::vector<Edge> contracted;
    for (auto [u, v] : inst.neq_edges) {
        int a = id[uf_find(parent, u)], b = id[uf_find(parent, v)];
        if (a == b) return 0;  // disequality inside an equality component
        contracted.push_back(make_edge(a, b));
    }
    std::sort(contracted.begin(), contracted.end());
    contracted.erase(std::unique(contracted.begin(), contracted.end()), contracted.end());
    Graph q(components);
    for (auto [a, b] : contracted) q.add_edge(a, b);
    return count_3colorings(q);
}

namespace {

// Shared tail of reroute and dummy_instance: relabel used blowup vertices,
// build the instance graph with its eq/neq split, and run the structural
// checks (edges respect blocks/E(H), topological-minor predicate).
EmbeddedInstance assemble(const Graph& h, int t, const std::vector<int>& used,
                          const std::vector<std::pair<Edge, bool>>& labeled_edges,
                          std::vector<int> placement, Linkage minor_model, int layers,
                          bool dummy) {
    EmbeddedInstance emb;
    emb.host = h;
    emb.t = t;
    emb.layers_used = layers;
    emb.dummy = dummy;
    emb.embed = used;

    std::map<int, int> index_of;
    for (std::size_t i = 0; i < used.size(); ++i) {
        require(index_of.emplace(used[i], static_cast<int>(i)).second, "duplicate instance vertex");
    }
    emb.instance.graph = Graph(static_cast<int>(used.size()));
    BlowupMap bm{t};
    for (auto& [e, is_eq] : labeled_edges) {
        int bu = bm.base(e.first), bv = bm.base(e.second);
        require(bu == bv || h.has_edge(bu, bv), "instance edge does not respect the pattern");
        Edge local = make_edge(index_of.at(e.first), index_of.at(e.second));
        emb.instance.graph.add_edge(local.first, local.second);
        (is_eq ? emb.instance.eq_edges : emb.instance.neq_edges).push_back(local);
    }
    emb.placement = std::move(placement);
    emb.minor_model = std::move(minor_model);
    verify_topological_minor(emb.minor_model, h.n() * t,
                             [&](int a, int b) { return blowup_adjacent(h, t, a, b); });
    return emb;
}

}  // namespace

EmbeddedInstance reroute(const Graph& g, const LinkedSetWitness& w) {
    int n = g.n();
    require(g.max_degree() <= 4, "reroute expects maximum degree <= 4");
    require(static_cast<int>(w.set.size()) >= n, "witness too small for this instance");
    require(w.route != nullptr, "witness has no router");
    int w0 = w.q;
    require(w0 >= 1, "witness blowup order must be positive");

    Multigraph mg(std::max(n, 1));
    for (auto [u, v] : g.edges()) mg.add_edge(u, v);
    auto classes = greedy_edge_color(mg);
    int r = static_cast<int>(classes.size());
    check(r <= 7, "edge split exceeded 7 matchings");

    // Route every matching in the witness blowup, then decide whether the
    // internals may share the endpoint layer (they may unless some internal
    // lands on a placed element of X).
    BlowupMap wit{w0};
    std::vector<char> is_placed(static_cast<std::size_t>(w.base.n()) * w0, 0);
    for (int v = 0; v < n; ++v) is_placed[w.set[v]] = 1;
    std::vector<Linkage> routed(r);
    bool collision = false;
    for (int j = 0; j < r; ++j) {
        Matching m;
        for (auto [u, v] : classes[j]) m.push_back(make_edge(w.set[u], w.set[v]));
        routed[j] = w.route(m);
        for (const auto& p : routed[j].paths) {
            for (std::size_t i = 1; i + 1 < p.size(); ++i) {
                if (is_placed[p[i]]) collision = true;
            }
        }
    }
    int shift = collision ? 1 : 0;
    int t = w0 * std::max(1, r + shift);
    check(t <= 8 * w0, "layer discipline exceeded its budget");
    if (!collision) check(t <= 7 * w0, "collision-free layering must fit 7 layers");

    BlowupMap host{t};
    auto place_endpoint = [&](int x) { return host.encode(wit.base(x), wit.clone(x)); };
    auto place_internal = [&](int j, int x) {
        return host.encode(wit.base(x), (j + shift) * w0 + wit.clone(x));
    };

    std::vector<int> used;
    std::vector<int> placement(n);
    for (int v = 0; v < n; ++v) {
        placement[v] = static_cast<int>(used.size());
        used.push_back(place_endpoint(w.set[v]));
    }
    std::map<Edge, int> edge_index;
    for (std::size_t i = 0; i < g.edges().size(); ++i) edge_index[g.edges()[i]] = static_cast<int>(i);

    std::vector<std::pair<Edge, bool>> labeled;
    Linkage model;
    model.matching.resize(g.m());
    model.paths.resize(g.m());
    for (int j = 0; j < r; ++j) {
        for (std::size_t i = 0; i < classes[j].size(); ++i) {
            const auto& p = routed[j].paths[i];
            check(p.size() >= 2, "witness produced a degenerate path");
            std::vector<int> final_path(p.size());
            final_path.front() = place_endpoint(p.front());
            final_path.back() = place_endpoint(p.back());
            for (std::size_t s = 1; s + 1 < p.size(); ++s) final_path[s] = place_internal(j, p[s]);
            for (std::size_t s = 1; s + 1 < p.size(); ++s) used.push_back(final_path[s]);
            for (std::size_t s = 0; s + 1 < final_path.size(); ++s) {
                labeled.push_back({make_edge(final_path[s], final_path[s + 1]), s != 0});
            }
            int gi = edge_index.at(classes[j][i]);
            model.matching[gi] = make_edge(final_path.front(), final_path.back());
            model.paths[gi] = std::move(final_path);
        }
    }
    return assemble(w.base, t, used, labeled, std::move(placement), std::move(model), r, false);
}

EmbeddedInstance dummy_instance(const Graph& g, const Graph& h) {
    int n = g.n();
    require(h.n() >= 1, "pattern must be nonempty");
    int block_a = 0, block_b = -1;
    if (h.m() > 0) {
        block_a = h.edges().front().first;
        block_b = h.edges().front().second;
    }
    int half = block_b >= 0 ? (n + 1) / 2 : n;
    int t = std::max(1, half);
    envelope(t <= 9, "dummy instance does not fit two blocks of the 3^t envelope");

    BlowupMap bm{t};
    std::vector<int> used;
    std::vector<int> placement(n);
    for (int v = 0; v < n; ++v) {
        placement[v] = v;
        used.push_back(v < half ? bm.encode(block_a, v) : bm.encode(block_b, v - half));
    }
    std::vector<std::pair<Edge, bool>> labeled;
    Linkage model;
    for (auto [u, v] : g.edges()) {
        Edge e = make_edge(used[u], used[v]);
        labeled.push_back({e, false});
        model.matching.push_back(e);
        model.paths.push_back({e.first, e.second});
    }
    return assemble(h, t, used, labeled, std::move(placement), std::move(model), 0, true);
}

CompatibilityGraph split_list(const EmbeddedInstance& emb, int jobs) {
    const Graph& h = emb.host;
    int t = emb.t, k = h.n();
    envelope(t >= 1 && t <= 9, "split-and-list envelope is t <= 9");

    CompatibilityGraph out;
    out.block_vertices.assign(k, {});
    BlowupMap bm{t};
    int ninst = emb.instance.graph.n();
    require(static_cast<int>(emb.embed.size()) == ninst, "embedding size mismatch");
    std::vector<int> local_index(ninst, -1);
    for (int i = 0; i < ninst; ++i) {
        int w = bm.base(emb.embed[i]);
        require(w >= 0 && w < k && bm.clone(emb.embed[i]) < t, "embedded vertex outside the host");
        local_index[i] = static_cast<int>(out.block_vertices[w].size());
        out.block_vertices[w].push_back(i);
    }

    // Classify instance edges as intra-block constraints or cross constraints
    // keyed by the H-edge they cross.
    struct Constraint {
        int a, b;  // local indices in the two blocks (intra: both in w)
        bool eq;
    };
    std::vector<std::vector<Constraint>> intra(k);
    std::map<Edge, std::vector<Constraint>> cross;
    auto classify = [&](const std::vector<Edge>& es, bool eq) {
        for (auto [u, v] : es) {
            int wu = bm.base(emb.embed[u]), wv = bm.base(emb.embed[v]);
            if (wu == wv) {
                intra[wu].push_back({local_index[u], local_index[v], eq});
            } else {
                require(h.has_edge(wu, wv), "cross edge outside the pattern");
                if (wu > wv) std::swap(wu, wv), std::swap(u, v);
                cross[{wu, wv}].push_back({local_index[u], local_index[v], eq});
            }
        }
    };
    classify(emb.instance.eq_edges, true);
    classify(emb.instance.neq_edges, false);

    // Per-block proper partial assignments.
    out.parts.assign(k, {});
    long long total = 0;
    for (int w = 0; w < k; ++w) {
        int c = static_cast<int>(out.block_vertices[w].size());
        std::vector<int> vals(c, 0);
        for (;;) {
            bool ok = true;
            for (const auto& con : intra[w]) {
                bool same = vals[con.a] == vals[con.b];
                if (same != con.eq) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.parts[w].push_back(vals);
            int pos = c - 1;
            while (pos >= 0 && vals[pos] == 2) vals[pos--] = 0;
            if (pos < 0) break;
            ++vals[pos];
        }
        total += static_cast<long long>(out.parts[w].size());
    }
    long long limit = k;
    for (int i = 0; i < t; ++i) limit *= 3;
    check(total <= limit, "split-and-list size bound k*3^t violated");

    out.part_offset.assign(k, 0);
    for (int w = 1; w < k; ++w) {
        out.part_offset[w] = out.part_offset[w - 1] + static_cast<int>(out.parts[w - 1].size());
    }
    out.colored.graph = Graph(static_cast<int>(total));
    out.colored.color.assign(total, 0);
    for (int w = 0; w < k; ++w) {
        for (std::size_t i = 0; i < out.parts[w].size(); ++i) {
            out.colored.color[out.part_offset[w] + i] = w;
        }
    }

    long long pair_work = 0;
    for (auto [w, wp] : h.edges()) {
        pair_work += static_cast<long long>(out.parts[w].size()) * out.parts[wp].size();
    }
    envelope(pair_work <= 500'000'000, "compatibility scan too large");

    // Compatibility edges per H-edge; block pairs are independent.
    std::vector<std::vector<std::pair<int, int>>> per_edge(h.edges().size());
    parallel_for(h.edges().size(), jobs, [&](std::size_t ei) {
        auto [w, wp] = h.edges()[ei];
        auto it = cross.find({w, wp});
        static const std::vector<Constraint> none;
        const auto& cons = it == cross.end() ? none : it->second;
        auto& sink = per_edge[ei];
        for (std::size_t i = 0; i < out.parts[w].size(); ++i) {
            const auto& a = out.parts[w][i];
            for (std::size_t j = 0; j < out.parts[wp].size(); ++j) {
                const auto& b = out.parts[wp][j];
                bool ok = true;
                for (const auto& con : cons) {
                    bool same = a[con.a] == b[con.b];
                    if (same != con.eq) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    sink.push_back({out.part_offset[w] + static_cast<int>(i),
                                    out.part_offset[wp] + static_cast<int>(j)});
                }
            }
        }
    });
    long long stored = 0;
    for (const auto& es : per_edge) stored += static_cast<long long>(es.size());
    envelope(stored <= 30'000'000, "compatibility graph too large to materialize");
    for (const auto& es : per_edge) {
        for (auto [a, b] : es) out.colored.graph.add_edge_unchecked(a, b);
    }
    out.colored.graph.normalize();
    return out;
}

long long count_colorful_sub(const Graph& h, const ColoredGraph& x, long long budget_nodes) {
    int k = h.n();
    std::vector<std::vector<int>> cand(k);
    for (int v = 0; v < x.graph.n(); ++v) {
        int c = x.color[v];
        require(c >= 0 && c < k, "host color outside the pattern palette");
        cand[c].push_back(v);
    }
    std::vector<char> done(k, 0);
    long long nodes = 0, count = 0;

    std::function<void(int)> rec = [&](int assigned) {
        if (assigned == k) {
            ++count;
            return;
        }
        // Connectivity-aware most-constrained-first: prefer classes with an
        // assigned H-neighbor, break ties by candidate count.
        int pick = -1;
        bool pick_touch = false;
        for (int w = 0; w < k; ++w) {
            if (done[w]) continue;
            bool touch = false;
            for (int nb : h.neighbors(w)) {
                if (done[nb]) {
                    touch = true;
                    break;
                }
            }
            if (pick < 0 || std::make_pair(!touch, cand[w].size()) <
                                std::make_pair(!pick_touch, cand[pick].size())) {
                pick = w;
                pick_touch = touch;
            }
        }
        done[pick] = 1;
        auto options = cand[pick];
        for (int v : options) {
            envelope(++nodes <= budget_nodes, "colorful subgraph search budget exceeded");
            std::vector<std::pair<int, std::vector<int>>> saved;
            bool dead = false;
            for (int nb : h.neighbors(pick)) {
                if (done[nb]) continue;
                const auto& adj = x.graph.neighbors(v);  // sorted
                std::vector<int> filtered;
                std::set_intersection(cand[nb].begin(), cand[nb].end(), adj.begin(), adj.end(),
                                      std::back_inserter(filtered));
                saved.push_back({nb, std::move(cand[nb])});
                cand[nb] = std::move(filtered);
                if (cand[nb].empty()) {
                    dead = true;
                    break;
                }
            }
            if (!dead) rec(assigned + 1);
            for (auto& [nb, old] : saved) cand[nb] = std::move(old);
        }
        done[pick] = 0;
    };
    rec(0);
    return count;
}

PipelineReport full_pipeline(const Graph& g, const LinkedSetWitness& w, const PipelineOptions& opt) {
    EmbeddedInstance emb = static_cast<int>(w.set.size()) >= g.n() ? reroute(g, w)
                                                                   : dummy_instance(g, w.base);
    CompatibilityGraph compat = split_list(emb, opt.jobs);

    PipelineReport rep;
    rep.n = g.n();
    rep.k = w.base.n();
    rep.t = emb.t;
    rep.layers = emb.layers_used;
    rep.dummy = emb.dummy;
    rep.router = emb.dummy ? "dummy" : w.router;
    rep.instance_vertices = emb.instance.graph.n();
    rep.instance_edges = emb.instance.graph.m();
    rep.compat_vertices = compat.colored.graph.n();
    rep.compat_edges = compat.colored.graph.m();

    if (opt.verify_counts) {
        auto attempt = [](const std::function<long long()>& f) -> std::optional<long long> {
            try {
                return f();
            } catch (const EnvelopeError&) {
                return std::nullopt;
            }
        };
        rep.colorings = attempt([&] { return count_3colorings(g); });
        rep.assignments = attempt([&] { return count_3assignments(emb.instance); });
        rep.colorful = attempt(
            [&] { return count_colorful_sub(w.base, compat.colored, opt.colorful_budget); });
    }
    std::vector<long long> present;
    for (const auto& c : {rep.colorings, rep.assignments, rep.colorful}) {
        if (c) present.push_back(*c);
    }
    if (present.size() >= 2 &&
        std::adjacent_find(present.begin(), present.end(), std::not_equal_to<>()) != present.end()) {
        rep.verdict = CountVerdict::Mismatch;
    } else if (present.size() == 3) {
        rep.verdict = CountVerdict::Equal;
    } else {
        rep.verdict = CountVerdict::Skipped;
    }
    return rep;
}

}  // namespace linkagelab
