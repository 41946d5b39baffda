#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linkagelab/graph.hpp"
#include "linkagelab/linkage.hpp"
#include "linkagelab/rational.hpp"

namespace linkagelab {

// All simple paths from u to v; throws EnvelopeError past cap.
std::vector<std::vector<int>> enumerate_paths(const Graph& h, int u, int v, long long cap);

enum class PivotRule { Bland, Dantzig };

// max eps subject to: every commodity (unordered terminal pair, or a single
// terminal with its one-vertex path) carries at least eps, and every vertex
// load is at most 1, where a pair path counts twice (both orientations) and
// a diagonal path once.  Solved exactly over the rationals.
struct FlowSolution {
    std::vector<int> terminals;                 // sorted, distinct
    std::vector<Edge> pairs;                    // index pairs into terminals, i < j
    std::vector<std::vector<std::vector<int>>> pair_paths;   // candidate paths per pair
    std::vector<std::vector<Rational>> pair_values;          // flow per candidate path
    std::vector<Rational> diag_values;          // one per terminal
    Rational eps;
    long long pivots = 0;
    long long variables = 0;
};

FlowSolution solve_concurrent_flow(const Graph& h, std::vector<int> terminals,
                                   PivotRule rule = PivotRule::Dantzig,
                                   long long per_pair_cap = 100000);

// Scales the optimum by D = lcm of all denominators: exactly q = D*eps paths
// (with multiplicity, surplus truncated in enumeration order) per terminal
// pair, total congestion at most D.
struct CongestedCliqueLinkage {
    std::vector<int> terminals;
    std::vector<Edge> pairs;  // index pairs, i < j
    long long D = 1;
    long long q = 0;          // D * eps
    std::vector<std::vector<std::vector<int>>> paths;  // q paths per pair
};

CongestedCliqueLinkage integralize(const FlowSolution& sol);

// Routes a demand multigraph on [t] through K_t with max degree <= q*t:
// direct edges while a pair's load stays under 18q, else the lowest-index
// middle vertex whose two hops and middle budget still fit.
struct CompleteRouting {
    std::vector<std::vector<int>> paths;  // per demand edge: {a,b} or {a,x,b}
    long long edge_load_limit = 0;        // 18q
    long long middle_limit = 0;           // qt
};

CompleteRouting route_in_complete(const Multigraph& demand, long long q);

// Composition: solve, integralize, and wrap the terminals' clone set
// X = { w^(i) : w in W, i < q|W| } in H (x) J_{2*18*D} with a router that
// projects a matching on X to terminal demands, routes them through K_t,
// substitutes the integral clique paths (round-robin over the q copies,
// each reused at most 18 times), shortcuts the composite walks, and lifts.
struct FlowWitness {
    LinkedSetWitness witness;
    Rational eps;
    long long D = 1;
    long long q = 0;
    long long Dp = 18;        // 18 * D
    CapacityBound bound;      // raw = eps * |W|^2 / 108
    bool fully_certified = false;
    long long matchings_checked = 0;
};

struct FlowCertOptions {
    long long full_threshold = 1000;   // certify every maximal matching up to this many
    int samples = 64;                  // spot samples otherwise
    std::uint64_t seed = 1;
    PivotRule rule = PivotRule::Dantzig;
    long long per_pair_cap = 100000;
};

FlowWitness flow_capacity_certificate(const Graph& h, std::vector<int> terminals,
                                      const FlowCertOptions& opt = {});

}  // namespace linkagelab
