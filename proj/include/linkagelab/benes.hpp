#pragma once

#include <vector>

#include "linkagelab/blowup.hpp"
#include "linkagelab/graph.hpp"

namespace linkagelab {

// Level-l network on 2*s*log2(s) vertices, s = 2^l.  Layout at offset o:
// inputs o..o+s-1, the two half-size subnetworks at o+s and o+s+T(l-1),
// outputs in the last s slots.  The base case is K_{2,2}.
struct BenesNetwork {
    int level = 0;
    bool augmented = false;
    Graph graph;
    std::vector<int> inputs;
    std::vector<int> outputs;
};

// Vertex count 2 * 2^level * level.
long long benes_size(int level);

// augmented adds the output rung edges w_{2i}w_{2i+1} (0-indexed pairs).
BenesNetwork build_benes(int level, bool augmented);

// Decides which half-network carries each input of one recursion step.
// D1 pairs i with i+s/2 (they share bundle targets); D2 pairs the inputs
// matched to outputs j and j+s/2.  Both are perfect matchings on [s], so
// their union is bipartite; a proper 2-coloring resolves all conflicts.
struct ConflictResolution {
    std::vector<int> input_half;   // 0 = up, 1 = down, per input index
    std::vector<int> output_half;  // half carrying the input matched to this output
};

ConflictResolution resolve_conflict(const std::vector<int>& perm);

// Routes the perfect matching input i -> output perm[i] with vertex-disjoint
// paths; O(s log s) total path length.
Linkage benes_link(int level, const std::vector<int>& perm);

// Routes a (not necessarily perfect) matching on input indices in the
// augmented network: the matching is padded to perfect by pairing unmatched
// inputs in ascending order, edge e_i (ascending lex order) sends its lower
// endpoint to output 2i and its upper endpoint to output 2i+1, the two plain
// paths are joined across the output rung edge, and only the paths of the
// original matching are returned.
Linkage augmented_link(int level, const Matching& m);

// Splits every degree-4 vertex into two adjacent vertices holding two of the
// original neighbors each (sorted order: lowest two stay on the first copy).
struct Degree3Network {
    Graph graph;
    std::vector<int> inputs;
    std::vector<int> outputs;
    std::vector<std::pair<int, int>> image;  // old vertex -> (first, second); second = -1 if unsplit
};

Degree3Network degree3_transform(const BenesNetwork& net);

// Topological minor model of g in augmented-benes(level) (x) J_layers,
// layers = max(1, 2*max_degree(g) - 1).  Vertex v sits on input v, clone 0;
// the paths of edge class i keep their internal vertices in clone layer i.
struct MinorModel {
    int level = 0;
    int layers = 1;
    int host_n = 0;            // vertex count of the blowup host
    std::vector<int> placement;  // g-vertex -> host vertex
    Linkage model;               // one path per edge of g
};

MinorModel universal_embed(const Graph& g, int level);

}  // namespace linkagelab
