#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linkagelab/benes.hpp"
#include "linkagelab/blowup.hpp"
#include "linkagelab/graph.hpp"
#include "linkagelab/rational.hpp"

namespace linkagelab {

enum class RouteStatus { Found, NotFound, BudgetExceeded };

struct RouteResult {
    RouteStatus status = RouteStatus::NotFound;
    Linkage linkage;       // populated when Found
    long long nodes = 0;   // search nodes spent
};

// Exhaustive DFS for vertex-disjoint paths joining the matching edges.
// Edges are routed in ascending order of endpoint distance (ties by index),
// neighbors are tried in ascending id order, and every matching endpoint is
// blocked for other paths up front (an uncongested linkage cannot cross one).
// The budget caps path-extension steps; NotFound is only returned after a
// complete exhaustion, so it is a proof of infeasibility.
RouteResult find_linkage_backtracking(const Graph& g, const Matching& m, long long budget);

// Calls fn for every maximal matching on the set x (complete pairing
// universe: perfect when |x| is even, one vertex skipped when odd).
// fn returns false to stop enumeration.
void for_each_maximal_matching(const std::vector<int>& x,
                               const std::function<bool(const Matching&)>& fn);

long long count_maximal_matchings(int set_size);

enum class CertStatus { Certified, Refuted, Inconclusive };

struct CertificationResult {
    CertStatus status = CertStatus::Inconclusive;
    long long matchings_checked = 0;
    Matching refuting;          // a concrete unroutable matching when Refuted
    long long nodes = 0;        // total search nodes
};

// Certifies that x is matching-linked in g: every maximal matching on x is
// routed by the backtracking solver. Maximal matchings suffice because a
// linkage restricted to a submatching stays a linkage.
CertificationResult is_matching_linked(const Graph& g, const std::vector<int>& x,
                                       long long budget_per_matching, int jobs = 1);

// Enumeration-style oracle on h (x) J_t: pick one simple base path per
// cross-block matching edge and test per-block clone counting (internal
// visits to block v must fit in t minus the matching endpoints living there).
// Exact; envelope h.n() <= 4 and t <= 2 enforced.
bool appendix_linkage_oracle(const Graph& h, int t, const Matching& m);

// Same search, but materializes the linkage in h (x) J_t.
std::optional<Linkage> appendix_linkage_route(const Graph& h, int t, const Matching& m);

// A certified matching-linked set together with a router that can produce
// an uncongested linkage in base (x) J_q for any matching on `set`.
struct LinkedSetWitness {
    Graph base;                 // H
    int q = 1;                  // X lives in base (x) J_q (ids are blowup ids)
    std::vector<int> set;
    std::string router;         // provenance tag
    std::function<Linkage(const Matching&)> route;  // throws VerificationError on failure
};

LinkedSetWitness benes_inputs_witness(int level);
LinkedSetWitness grid_diagonal_witness(int level);
LinkedSetWitness backtracking_witness(const Graph& h, int q, std::vector<int> set, long long budget);

// l x l grid; cell (x, y) has id x + y*l.
Graph grid_graph(int l);
inline int grid_id(int l, int x, int y) { return x + y * l; }

// Routes a matching on diagonal indices through row-then-column paths:
// edge (a, b), a < b, walks row a to column b, then column b up to (b, b).
// Horizontal segments live in distinct rows and vertical ones in distinct
// columns, so congestion is at most 2.
Linkage grid_diagonal_linkage(int l, const Matching& diag_edges);

// Uncongested version in grid (x) J_2: endpoints at clone 0; where two paths
// cross, the later path (by matching order) moves that visit to clone 1.
Linkage grid_blowup2_linkage(int l, const Matching& diag_edges);

struct CapacityBound {
    Rational raw;            // the bound produced by the argument
    Rational value;          // max(1, raw); capacity is never below 1
    std::string provenance;
    bool certified = false;  // true when backed by a certified witness
};

CapacityBound make_capacity_bound(const Rational& raw, const std::string& provenance, bool certified);

// |X| / (3q) from a matching-linked set of size |X| in H (x) J_q.
CapacityBound capacity_from_witness(int set_size, int q, const std::string& provenance, bool certified);

// Numeric-only bound max(1, avg_degree / 48); no witness attached.
CapacityBound average_degree_bound(const Graph& h);

CapacityBound benes_capacity(int level);  // raw = 2^level / 3
CapacityBound grid_capacity(int level);   // raw = (level - 1) / 6

// Largest augmented benes network with 2^(l+1) * l <= k, padded with
// isolated vertices to exactly k vertices.
struct CybtPattern {
    int k = 0;
    int level = 0;
    Graph pattern;
    CapacityBound bound;           // raw = 2^level / 3
    Rational log_claim;            // k / (12 * log2(k)), for comparison
};

CybtPattern cybt_pattern(int k);

// Maximum matching-linked set in h (x) J_t. Within the oracle envelope
// (k <= 4, t <= 2) candidate multisets are scanned in descending size up to
// clone permutation, so the first fully certified one is an exact maximum.
// Larger instances fall back to the greedy descent below and return a
// certified lower bound with exact_maximum = false.
struct MaxSetResult {
    std::vector<int> set;      // blowup ids
    bool exact_maximum = false;
    bool certified = false;
};

MaxSetResult max_matching_linked_set(const Graph& h, int t, long long budget_per_matching = 200'000);

// Greedy descent for larger instances: start from all of h (x) J_q and drop
// an endpoint of a refuting matching until certification passes. The result
// is a certified lower bound, not a maximum.
MaxSetResult find_linked_set_descent(const Graph& h, int q, long long budget_per_matching);

}  // namespace linkagelab
