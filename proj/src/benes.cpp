#include "linkagelab/benes.hpp"

#include <algorithm>
#include <string>

namespace linkagelab {

long long benes_size(int level) {
    require(level >= 1, "level must be >= 1");
    return 2LL * (1LL << level) * level;
}

namespace {

// All formulas below follow the fixed layout documented in the header.
int input_id(int level, int offset, int i) {
    (void)level;
    return offset + i;
}

int output_id(int level, int offset, int i) {
    return offset + static_cast<int>(benes_size(level)) - (1 << level) + i;
}

void emit_edges(int level, int offset, Graph& g) {
    int s = 1 << level;
    if (level == 1) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) g.add_edge(input_id(1, offset, i), output_id(1, offset, j));
        }
        return;
    }
    int half = s / 2;
    int sub = static_cast<int>(benes_size(level - 1));
    int up = offset + s, down = offset + s + sub;
    for (int i = 0; i < half; ++i) {
        for (int in : {input_id(level, offset, i), input_id(level, offset, i + half)}) {
            g.add_edge(in, input_id(level - 1, up, i));
            g.add_edge(in, input_id(level - 1, down, i));
        }
        for (int out : {output_id(level, offset, i), output_id(level, offset, i + half)}) {
            g.add_edge(out, output_id(level - 1, up, i));
            g.add_edge(out, output_id(level - 1, down, i));
        }
    }
    emit_edges(level - 1, up, g);
    emit_edges(level - 1, down, g);
}

}  // namespace

BenesNetwork build_benes(int level, bool augmented) {
    require(level >= 1, "level must be >= 1");
    BenesNetwork net;
    net.level = level;
    net.augmented = augmented;
    int s = 1 << level;
    net.graph = Graph(static_cast<int>(benes_size(level)));
    emit_edges(level, 0, net.graph);
    for (int i = 0; i < s; ++i) {
        net.inputs.push_back(input_id(level, 0, i));
        net.outputs.push_back(output_id(level, 0, i));
    }
    if (augmented) {
        for (int i = 0; i + 1 < s; i += 2) net.graph.add_edge(net.outputs[i], net.outputs[i + 1]);
    }
    net.graph.normalize();
    return net;
}

ConflictResolution resolve_conflict(const std::vector<int>& perm) {
    int s = static_cast<int>(perm.size());
    require(s >= 2 && s % 2 == 0, "permutation size must be even and >= 2");
    std::vector<int> inv(s, -1);
    for (int i = 0; i < s; ++i) {
        require(perm[i] >= 0 && perm[i] < s && inv[perm[i]] == -1, "not a permutation");
        inv[perm[i]] = i;
    }
    int half = s / 2;
    std::vector<std::vector<int>> adj(s);
    for (int i = 0; i < half; ++i) {
        adj[i].push_back(i + half);
        adj[i + half].push_back(i);
        int a = inv[i], b = inv[i + half];
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    ConflictResolution res;
    res.input_half.assign(s, -1);
    // D1 and D2 are perfect matchings, so every component is an even cycle;
    // the coloring must come out proper.
    for (int start = 0; start < s; ++start) {
        if (res.input_half[start] != -1) continue;
        res.input_half[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (res.input_half[v] == -1) {
                    res.input_half[v] = 1 - res.input_half[u];
                    stack.push_back(v);
                } else {
                    check(res.input_half[v] != res.input_half[u],
                          "conflict graph is not bipartite; matchings were not perfect");
                }
            }
        }
    }
    int ups = 0;
    for (int i = 0; i < s; ++i) ups += res.input_half[i] == 0;
    check(ups == half, "exactly half the inputs must route through each subnetwork");
    res.output_half.assign(s, -1);
    for (int j = 0; j < s; ++j) res.output_half[j] = res.input_half[inv[j]];
    return res;
}

namespace {

// Paths indexed by input i for the subnetwork at (level, offset).
std::vector<std::vector<int>> route(int level, int offset, const std::vector<int>& perm) {
    int s = 1 << level;
    std::vector<std::vector<int>> paths(s);
    if (level == 1) {
        for (int i = 0; i < 2; ++i) paths[i] = {input_id(1, offset, i), output_id(1, offset, perm[i])};
        return paths;
    }
    int half = s / 2;
    auto res = resolve_conflict(perm);
    std::vector<int> sub_perm[2];
    sub_perm[0].assign(half, -1);
    sub_perm[1].assign(half, -1);
    for (int i = 0; i < s; ++i) {
        int h = res.input_half[i];
        sub_perm[h][i % half] = perm[i] % half;
    }
    for (int h = 0; h < 2; ++h) {
        for (int i = 0; i < half; ++i) check(sub_perm[h][i] != -1, "subnetwork matching not perfect");
    }
    int sub = static_cast<int>(benes_size(level - 1));
    int base[2] = {offset + s, offset + s + sub};
    auto up_paths = route(level - 1, base[0], sub_perm[0]);
    auto down_paths = route(level - 1, base[1], sub_perm[1]);
    for (int i = 0; i < s; ++i) {
        int h = res.input_half[i];
        const auto& inner = (h == 0 ? up_paths : down_paths)[i % half];
        auto& p = paths[i];
        p.push_back(input_id(level, offset, i));
        p.insert(p.end(), inner.begin(), inner.end());
        p.push_back(output_id(level, offset, perm[i]));
    }
    return paths;
}

}  // namespace

Linkage benes_link(int level, const std::vector<int>& perm) {
    require(level >= 1, "level must be >= 1");
    int s = 1 << level;
    require(static_cast<int>(perm.size()) == s, "permutation size must be 2^level");
    std::vector<char> hit(s, 0);
    for (int v : perm) {
        require(v >= 0 && v < s && !hit[v], "not a permutation");
        hit[v] = 1;
    }
    auto paths = route(level, 0, perm);
    Linkage l;
    for (int i = 0; i < (1 << level); ++i) {
        l.matching.push_back({input_id(level, 0, i), output_id(level, 0, perm[i])});
        l.paths.push_back(std::move(paths[i]));
    }
    return l;
}

Linkage augmented_link(int level, const Matching& m) {
    require(level >= 1, "level must be >= 1");
    int s = 1 << level;
    require_matching(m, s);

    Matching full;
    for (auto [a, b] : m) full.push_back(make_edge(a, b));
    std::vector<char> used(s, 0);
    for (auto [a, b] : full) used[a] = used[b] = 1;
    std::vector<int> free;
    for (int i = 0; i < s; ++i) {
        if (!used[i]) free.push_back(i);
    }
    for (std::size_t i = 0; i + 1 < free.size(); i += 2) full.push_back({free[i], free[i + 1]});
    std::sort(full.begin(), full.end());

    std::vector<int> perm(s, -1);
    for (std::size_t i = 0; i < full.size(); ++i) {
        perm[full[i].first] = static_cast<int>(2 * i);
        perm[full[i].second] = static_cast<int>(2 * i) + 1;
    }
    auto plain = benes_link(level, perm);

    Linkage out;
    for (auto [a, b] : m) {
        auto e = make_edge(a, b);
        std::vector<int> path = plain.paths[e.first];
        const auto& back = plain.paths[e.second];
        path.insert(path.end(), back.rbegin(), back.rend());
        out.matching.push_back({input_id(level, 0, e.first), input_id(level, 0, e.second)});
        out.paths.push_back(std::move(path));
    }
    return out;
}

Degree3Network degree3_transform(const BenesNetwork& net) {
    const Graph& g = net.graph;
    Degree3Network out;
    out.image.assign(g.n(), {-1, -1});
    int next = 0;
    for (int v = 0; v < g.n(); ++v) {
        out.image[v].first = next++;
        if (g.degree(v) >= 4) out.image[v].second = next++;
    }
    // Edge (u, v) attaches at u's first copy when v is among u's two lowest
    // neighbors, else at the second copy.
    auto attach = [&](int u, int v) {
        if (out.image[u].second < 0) return out.image[u].first;
        auto nb = g.neighbors(u);
        std::sort(nb.begin(), nb.end());
        int rank = static_cast<int>(std::find(nb.begin(), nb.end(), v) - nb.begin());
        return rank < 2 ? out.image[u].first : out.image[u].second;
    };
    out.graph = Graph(next);
    for (int v = 0; v < g.n(); ++v) {
        if (out.image[v].second >= 0) out.graph.add_edge(out.image[v].first, out.image[v].second);
    }
    for (auto [u, v] : g.edges()) out.graph.add_edge(attach(u, v), attach(v, u));
    out.graph.normalize();
    for (int v : net.inputs) out.inputs.push_back(out.image[v].first);
    for (int v : net.outputs) out.outputs.push_back(out.image[v].first);
    check(out.graph.max_degree() <= 3, "transform left a vertex of degree > 3");
    return out;
}

MinorModel universal_embed(const Graph& g, int level) {
    require(level >= 1, "level must be >= 1");
    int s = 1 << level;
    require(g.n() <= s, "graph needs at most 2^level vertices");
    int delta = g.max_degree();
    int layers = std::max(1, 2 * delta - 1);

    Multigraph mg(g.n());
    for (auto [u, v] : g.edges()) mg.add_edge(u, v);
    auto classes = greedy_edge_color(mg);
    check(static_cast<int>(classes.size()) <= layers, "edge coloring exceeds available layers");

    auto net = build_benes(level, true);
    BlowupMap bm{layers};
    MinorModel model;
    model.level = level;
    model.layers = layers;
    model.host_n = net.graph.n() * layers;
    for (int v = 0; v < g.n(); ++v) model.placement.push_back(bm.encode(net.inputs[v], 0));

    std::vector<char> is_input(net.graph.n(), 0);
    for (int v : net.inputs) is_input[v] = 1;
    std::vector<std::vector<int>> raw_paths(g.m());
    std::vector<Edge> raw_edges(g.m());
    std::size_t out_idx = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        auto routed = augmented_link(level, classes[c]);
        for (std::size_t i = 0; i < routed.paths.size(); ++i) {
            std::vector<int> path;
            const auto& p = routed.paths[i];
            for (std::size_t j = 0; j < p.size(); ++j) {
                bool is_end = j == 0 || j + 1 == p.size();
                // Inputs never occur internally on augmented-link paths, so
                // layer 0 is safe to share between class 0 and the endpoints.
                check(is_end || !is_input[p[j]], "input vertex appeared inside a routed path");
                path.push_back(bm.encode(p[j], is_end ? 0 : static_cast<int>(c)));
            }
            raw_paths[out_idx] = std::move(path);
            raw_edges[out_idx] = classes[c][i];
            ++out_idx;
        }
    }
    for (std::size_t i = 0; i < raw_paths.size(); ++i) {
        model.model.matching.push_back(
            {model.placement[raw_edges[i].first], model.placement[raw_edges[i].second]});
        model.model.paths.push_back(std::move(raw_paths[i]));
    }
    verify_topological_minor(model.model, model.host_n, [&](int a, int b) {
        return blowup_adjacent(net.graph, layers, a, b);
    });
    return model;
}

}  // namespace linkagelab
