#include "linkagelab/blowup.hpp"

#include <algorithm>
#include <string>

namespace linkagelab {

Graph blowup(const Graph& h, int t) {
    require(t >= 1, "blowup order must be >= 1");
    BlowupMap bm{t};
    Graph g(h.n() * t);
    for (int v = 0; v < h.n(); ++v) {
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) g.add_edge_unchecked(bm.encode(v, i), bm.encode(v, j));
        }
    }
    for (auto [u, v] : h.edges()) {
        for (int i = 0; i < t; ++i) {
            for (int j = 0; j < t; ++j) g.add_edge_unchecked(bm.encode(u, i), bm.encode(v, j));
        }
    }
    g.normalize();
    return g;
}

Multigraph project(const Matching& m, int base_n, int t) {
    require(t >= 1, "blowup order must be >= 1");
    BlowupMap bm{t};
    Multigraph out(base_n);
    for (auto [a, b] : m) {
        require(a >= 0 && a < base_n * t && b >= 0 && b < base_n * t, "matching vertex out of range");
        int u = bm.base(a), v = bm.base(b);
        if (u != v) out.add_edge(u, v);
    }
    return out;
}

std::vector<std::vector<Edge>> greedy_edge_color(const Multigraph& g) {
    std::vector<std::vector<char>> used(g.n());  // used[v][c]: vertex v touches class c
    std::vector<std::vector<Edge>> classes;
    for (auto [u, v] : g.edges()) {
        std::size_t c = 0;
        for (;; ++c) {
            bool u_free = c >= used[u].size() || !used[u][c];
            bool v_free = c >= used[v].size() || !used[v][c];
            if (u_free && v_free) break;
        }
        if (c >= classes.size()) classes.resize(c + 1);
        if (used[u].size() <= c) used[u].resize(c + 1, 0);
        if (used[v].size() <= c) used[v].resize(c + 1, 0);
        used[u][c] = used[v][c] = 1;
        classes[c].push_back({u, v});
    }
    int limit = g.m() == 0 ? 0 : 2 * g.max_degree() - 1;
    check(static_cast<int>(classes.size()) <= limit || g.m() == 0,
          "greedy edge coloring exceeded 2*Delta-1 classes");
    for (const auto& cls : classes) require_matching(cls, g.n());
    return classes;
}

std::vector<int> linkage_congestion(int host_n, const Linkage& l) {
    std::vector<int> count(host_n, 0);
    for (const auto& p : l.paths) {
        for (int v : p) {
            require(v >= 0 && v < host_n, "path vertex out of range");
            ++count[v];
        }
    }
    return count;
}

int max_congestion(int host_n, const Linkage& l) {
    auto c = linkage_congestion(host_n, l);
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end());
}

void verify_linkage(const Linkage& l, int host_n, const std::function<bool(int, int)>& adjacent,
                    int congestion_limit) {
    check(l.matching.size() == l.paths.size(), "one path per matching edge required");
    std::vector<char> seen(host_n, 0);
    for (std::size_t i = 0; i < l.paths.size(); ++i) {
        const auto& p = l.paths[i];
        check(!p.empty(), "empty path");
        auto [a, b] = l.matching[i];
        bool fwd = p.front() == a && p.back() == b;
        bool bwd = p.front() == b && p.back() == a;
        check(fwd || bwd, "path endpoints do not match edge " + std::to_string(i));
        for (int v : p) {
            check(v >= 0 && v < host_n, "path vertex out of range");
            check(!seen[v], "vertex repeated within a path");
            seen[v] = 1;
        }
        for (int v : p) seen[v] = 0;
        for (std::size_t j = 0; j + 1 < p.size(); ++j) {
            check(adjacent(p[j], p[j + 1]), "non-adjacent consecutive path vertices");
        }
    }
    auto cong = linkage_congestion(host_n, l);
    for (int v = 0; v < host_n; ++v) {
        check(cong[v] <= congestion_limit, "congestion limit exceeded at vertex " + std::to_string(v));
    }
}

void verify_topological_minor(const Linkage& l, int host_n,
                              const std::function<bool(int, int)>& adjacent) {
    check(l.matching.size() == l.paths.size(), "one path per matching edge required");
    std::vector<char> endpoint(host_n, 0), internal(host_n, 0);
    std::vector<char> seen(host_n, 0);
    for (std::size_t i = 0; i < l.paths.size(); ++i) {
        const auto& p = l.paths[i];
        check(p.size() >= 2, "degenerate model path");
        auto [a, b] = l.matching[i];
        bool fwd = p.front() == a && p.back() == b;
        bool bwd = p.front() == b && p.back() == a;
        check(fwd || bwd, "path endpoints do not match edge " + std::to_string(i));
        for (int v : p) {
            check(v >= 0 && v < host_n, "path vertex out of range");
            check(!seen[v], "vertex repeated within a path");
            seen[v] = 1;
        }
        for (int v : p) seen[v] = 0;
        for (std::size_t j = 0; j + 1 < p.size(); ++j) {
            check(adjacent(p[j], p[j + 1]), "non-adjacent consecutive path vertices");
        }
        // A shared vertex must be an endpoint on every path that contains it.
        for (std::size_t j = 0; j < p.size(); ++j) {
            bool is_end = j == 0 || j + 1 == p.size();
            if (is_end) {
                check(!internal[p[j]], "model paths overlap at a non-endpoint");
                endpoint[p[j]] = 1;
            } else {
                check(!internal[p[j]] && !endpoint[p[j]], "model paths overlap at a non-endpoint");
                internal[p[j]] = 1;
            }
        }
    }
}

Linkage lift_congested_linkage(const Graph& h, int q, const Matching& m,
                               const std::vector<std::vector<int>>& base_paths) {
    require(q >= 1, "congestion parameter must be >= 1");
    require(base_paths.size() == m.size(), "one base path per matching edge required");
    BlowupMap in{q}, out{2 * q};
    require_matching(m, h.n() * q);

    // The provided linkage must be a valid q-congested routing of project(m).
    std::vector<int> visits(h.n(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto [a, b] = m[i];
        const auto& p = base_paths[i];
        int u = in.base(a), v = in.base(b);
        if (u == v) {
            require(p.size() == 1 && p[0] == u, "intra-block edge must carry the single-base path");
            continue;
        }
        require(!p.empty() && p.front() == u && p.back() == v, "base path endpoints mismatch");
        std::vector<char> on_path(h.n(), 0);
        for (int w : p) {
            require(w >= 0 && w < h.n(), "base path vertex out of range");
            require(!on_path[w], "base path not simple");
            on_path[w] = 1;
            ++visits[w];
        }
        for (std::size_t j = 0; j + 1 < p.size(); ++j) {
            require(h.has_edge(p[j], p[j + 1]), "base path uses a non-edge");
        }
    }
    for (int w = 0; w < h.n(); ++w) {
        require(visits[w] <= q, "linkage congestion exceeds q at base vertex " + std::to_string(w));
    }

    Linkage lifted;
    std::vector<int> taken(h.n(), 0);  // internal clones q..q+taken-1 already assigned
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto [a, b] = m[i];
        int ub = in.base(a), vb = in.base(b);
        lifted.matching.emplace_back(out.encode(ub, in.clone(a)), out.encode(vb, in.clone(b)));
        std::vector<int> path;
        if (ub == vb) {
            path = {out.encode(ub, in.clone(a)), out.encode(vb, in.clone(b))};
        } else {
            const auto& p = base_paths[i];
            path.push_back(out.encode(ub, in.clone(a)));
            for (std::size_t j = 1; j + 1 < p.size(); ++j) {
                path.push_back(out.encode(p[j], q + taken[p[j]]++));
            }
            path.push_back(out.encode(vb, in.clone(b)));
        }
        lifted.paths.push_back(std::move(path));
    }
    verify_linkage(lifted, h.n() * 2 * q, [&](int x, int y) { return blowup_adjacent(h, 2 * q, x, y); }, 1);
    return lifted;
}

}  // namespace linkagelab
