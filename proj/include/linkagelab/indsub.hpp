#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "linkagelab/graph.hpp"
#include "linkagelab/rational.hpp"

namespace linkagelab {

// Lexicographically smallest upper-triangle adjacency string over all vertex
// permutations; two graphs are isomorphic iff the strings match. k! scan,
// envelope n <= 8.
std::string canonical_form(const Graph& g);

// All 2^C(k,2) labeled graphs on [k]; envelope k <= 5.
std::vector<Graph> all_graphs(int k);

// One representative per isomorphism class, ordered by canonical form.
std::vector<Graph> unlabeled_graphs(int k);

long long automorphism_count(const Graph& g);

// Number of (not necessarily induced) copies of h in g: edge-preserving
// injections divided by |Aut(h)|.
long long count_sub(const Graph& h, const Graph& g);

// Isomorphism-invariant map from k-vertex graphs to rationals; built-ins
// cover the indicator families, tables are keyed by canonical form (missing
// keys evaluate to 0).
class GraphInvariant {
  public:
    GraphInvariant(int k, std::string name, std::function<Rational(const Graph&)> eval)
        : k_(k), name_(std::move(name)), eval_(std::move(eval)) {
        require(k >= 1, "invariant arity must be >= 1");
    }

    static GraphInvariant from_table(int k, std::map<std::string, Rational> table);
    static GraphInvariant indicator_clique(int k);
    static GraphInvariant indicator_edgeless(int k);
    static GraphInvariant indicator_connected(int k);
    static GraphInvariant indicator_even_edges(int k);
    static GraphInvariant indicator_of(const Graph& h);  // 1 on h's isomorphism class
    static GraphInvariant constant_one(int k);

    int k() const { return k_; }
    const std::string& name() const { return name_; }
    Rational eval(const Graph& g) const {
        require(g.n() == k_, "invariant arity mismatch");
        return eval_(g);
    }

  private:
    int k_;
    std::string name_;
    std::function<Rational(const Graph&)> eval_;
};

// (-1)^{|E|} sum over S subseteq E of (-1)^{|S|} phi(H[S]); H[S] keeps all
// vertices. Envelope |E| <= 24.
Rational alternating_enumerator(const GraphInvariant& phi, const Graph& h);

// Sum of phi over all k-subsets of V(g); envelope C(n, k) <= budget.
Rational count_indsub(const GraphInvariant& phi, const Graph& g, long long budget = 2'000'000);

// Verifies count_indsub(phi, g) = sum over unlabeled H of phi_hat(H) *
// count_sub(H, g); envelope k <= 5.
bool phi_sub_identity_check(const GraphInvariant& phi, const Graph& g);

// Removes vertices whose color lies in xcolors and edges whose color pair
// (unordered, possibly monochromatic) lies in ypairs; remaining vertices are
// relabeled in order.
ColoredGraph delete_by_colors(const ColoredGraph& g, const std::vector<int>& xcolors,
                              const std::vector<std::pair<int, int>>& ypairs);

// Drops every edge of g whose color pair is not an edge of h (including
// monochromatic pairs); colorful subgraph counts are unchanged.
ColoredGraph colsub_preprocess(const Graph& h, const ColoredGraph& g);

// The inclusion-exclusion reduction: recovers the colorful h-copy count of a
// preprocessed colored host from 2^{|V(h)|+|E(h)|} uncolored count_indsub
// calls, divided by the alternating enumerator (must be nonzero).
long long colsub_via_indsub(const Graph& h, const ColoredGraph& g, const GraphInvariant& phi,
                            int jobs = 1);

}  // namespace linkagelab
