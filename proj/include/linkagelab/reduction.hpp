#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkagelab/blowup.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/linkage.hpp"

namespace linkagelab {

// Brute-force proper-3-coloring count; envelope n <= 18.
long long count_3colorings(const Graph& g);

// Graph with its edge set partitioned into equality and disequality
// constraints; an assignment V -> {0,1,2} is proper when every eq edge joins
// equal values and every neq edge joins distinct values.
struct ThreeAssignmentInstance {
    Graph graph;
    std::vector<Edge> eq_edges;
    std::vector<Edge> neq_edges;
};

// Contracts the eq edges and counts proper 3-colorings of the quotient; a
// neq edge inside one eq component makes the count 0.
long long count_3assignments(const ThreeAssignmentInstance& inst);

// A 3-assignment instance drawn inside the blowup host (x) J_t. Instance
// vertices are relabeled 0..n'-1; embed maps them to blowup ids.
struct EmbeddedInstance {
    ThreeAssignmentInstance instance;
    Graph host;                    // the base pattern H
    int t = 1;                     // clone count of the hosting blowup
    std::vector<int> embed;        // instance vertex -> blowup id in H (x) J_t
    std::vector<int> placement;    // original vertex -> instance vertex (prefix ids)
    Linkage minor_model;           // per original edge, its path in blowup ids
    int layers_used = 0;           // matchings the edge set was split into
    bool dummy = false;
};

// Embeds g into the witness blowup: vertices onto the first |V(g)| witness
// elements, edges split into <= 7 matchings by greedy edge coloring, each
// matching routed by the witness with internals moved to a private clone
// layer. The first edge of every path becomes a disequality, the rest
// equalities, so proper assignments biject with proper 3-colorings of g.
EmbeddedInstance reroute(const Graph& g, const LinkedSetWitness& w);

// Fallback when the witness is smaller than |V(g)|: g is copied with all
// edges as disequalities into the union of two adjacent blocks (one block if
// it fits), which span a clique in the blowup.
EmbeddedInstance dummy_instance(const Graph& g, const Graph& h);

// Split-and-list compatibility graph: one part per base vertex w holding the
// proper partial assignments of the instance restricted to block w; edges
// join compatible assignments across blocks with ww' in E(H).
struct CompatibilityGraph {
    ColoredGraph colored;                            // color of a part vertex = base vertex
    std::vector<std::vector<int>> block_vertices;    // per base w: instance vertices in block w
    std::vector<std::vector<std::vector<int>>> parts;  // per base w: assignments (values aligned with block_vertices)
    std::vector<int> part_offset;                    // per base w: id of its first assignment vertex
};

CompatibilityGraph split_list(const EmbeddedInstance& emb, int jobs = 1);

// Exact count of color-preserving H-copies in x: one vertex per color class,
// adjacent in x across every edge of h. Backtracking assigns classes in a
// connectivity-aware most-constrained-first order; budget counts search
// nodes and is an envelope, not a verdict.
long long count_colorful_sub(const Graph& h, const ColoredGraph& x,
                             long long budget_nodes = 400'000'000);

enum class CountVerdict { Equal, Mismatch, Skipped };

struct PipelineReport {
    int n = 0, k = 0, t = 0, layers = 0;
    bool dummy = false;
    std::string router;
    long long instance_vertices = 0, instance_edges = 0;
    long long compat_vertices = 0, compat_edges = 0;
    std::optional<long long> colorings, assignments, colorful;
    CountVerdict verdict = CountVerdict::Skipped;
};

struct PipelineOptions {
    bool verify_counts = true;
    int jobs = 1;
    long long colorful_budget = 400'000'000;
};

// The full chain: reroute (or dummy fallback), split-and-list, and the three
// exact counts with equality verdicts. Structural checks (minor model,
// block-respecting edges, |V(X)| <= k 3^t) always run; count verification is
// skipped only when an envelope forbids it or verify_counts is off.
PipelineReport full_pipeline(const Graph& g, const LinkedSetWitness& w,
                             const PipelineOptions& opt = {});

}  // namespace linkagelab
