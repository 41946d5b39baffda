#pragma once

#include <functional>
#include <vector>

#include "linkagelab/graph.hpp"

namespace linkagelab {

// Vertex v^(i) of H (x) J_t is encoded as v*t + i with clone i in [0, t).
struct BlowupMap {
    int t;
    int encode(int base, int clone) const { return base * t + clone; }
    int base(int id) const { return id / t; }
    int clone(int id) const { return id % t; }
};

// H (x) J_t: clone cliques inside each block, complete bipartite join across
// every edge of H.
Graph blowup(const Graph& h, int t);

// Adjacency in H (x) J_t without materializing it.
inline bool blowup_adjacent(const Graph& h, int t, int a, int b) {
    BlowupMap bm{t};
    int u = bm.base(a), v = bm.base(b);
    if (u == v) return a != b;
    return h.has_edge(u, v);
}

// Multiset of base edges of the cross-block edges of m; intra-block edges dropped.
Multigraph project(const Matching& m, int base_n, int t);

// Greedy proper edge coloring in input order, lowest free class first.
// Uses at most 2*max_degree - 1 classes; every class is a matching.
std::vector<std::vector<Edge>> greedy_edge_color(const Multigraph& g);

// One routed path per matching edge. Paths are vertex id sequences in the host.
struct Linkage {
    Matching matching;                   // edge i is routed by paths[i]
    std::vector<std::vector<int>> paths;
};

// Number of paths through each vertex (a simple path counts once per vertex).
std::vector<int> linkage_congestion(int host_n, const Linkage& l);

int max_congestion(int host_n, const Linkage& l);

// Full check: every path simple, consecutive vertices adjacent under `adjacent`,
// path i runs between the endpoints of matching edge i, congestion <= limit.
void verify_linkage(const Linkage& l, int host_n, const std::function<bool(int, int)>& adjacent,
                    int congestion_limit);

// Topological minor model check: every path simple and valid, path i joins the
// endpoints of matching edge i, and two distinct paths may only meet at a
// vertex that is an endpoint of both.
void verify_topological_minor(const Linkage& l, int host_n,
                              const std::function<bool(int, int)>& adjacent);

// Lifts a q-congested linkage for project(m) in h to an uncongested m-linkage
// in h (x) J_{2q}.  m is a matching over V(h (x) J_q); base_paths[i] is the
// base path routing edge i of m (for an intra-block edge: the single base).
// The i-th internal visit to base w across all paths moves to clone q+i;
// endpoints keep their clones from m.
Linkage lift_congested_linkage(const Graph& h, int q, const Matching& m,
                               const std::vector<std::vector<int>>& base_paths);

}  // namespace linkagelab
