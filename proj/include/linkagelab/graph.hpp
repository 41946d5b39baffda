#pragma once

#include <algorithm>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "linkagelab/util.hpp"

namespace linkagelab {

using Edge = std::pair<int, int>;  // stored normalized, first < second

inline Edge make_edge(int u, int v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph on dense vertex ids 0..n-1.
class Graph {
  public:
    Graph() : n_(0) {}
    explicit Graph(int n) : n_(n), adj_(n) { require(n >= 0, "vertex count must be >= 0"); }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v) {
        require(u >= 0 && u < n_ && v >= 0 && v < n_, "edge endpoint out of range");
        require(u != v, "self-loops not allowed");
        require(!has_edge(u, v), "duplicate edge");
        edges_.push_back(make_edge(u, v));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    // Skips the duplicate scan; for bulk construction where the caller
    // guarantees distinct normalized pairs.
    void add_edge_unchecked(int u, int v) {
        require(u >= 0 && u < n_ && v >= 0 && v < n_, "edge endpoint out of range");
        require(u != v, "self-loops not allowed");
        edges_.push_back(make_edge(u, v));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        int other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::find(a.begin(), a.end(), other) != a.end();
    }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    // Sorts adjacency lists and the edge list; call after bulk construction
    // so iteration order is a deterministic function of the edge set.
    void normalize() {
        for (auto& a : adj_) std::sort(a.begin(), a.end());
        std::sort(edges_.begin(), edges_.end());
    }

    bool same_edge_set(const Graph& other) const {
        if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
        auto a = edges_, b = other.edges_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

  private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Undirected multigraph; parallel edges kept, no self-loops.
class Multigraph {
  public:
    Multigraph() : n_(0) {}
    explicit Multigraph(int n) : n_(n), degree_(n, 0) { require(n >= 0, "vertex count must be >= 0"); }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v) {
        require(u >= 0 && u < n_ && v >= 0 && v < n_, "edge endpoint out of range");
        require(u != v, "self-loops not allowed");
        edges_.push_back(make_edge(u, v));
        ++degree_[u];
        ++degree_[v];
    }

    const std::vector<Edge>& edges() const { return edges_; }
    int degree(int v) const { return degree_[v]; }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree_[v]);
        return d;
    }

  private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<int> degree_;
};

struct ColoredGraph {
    Graph graph;
    std::vector<int> color;  // one entry per vertex
};

// A matching is a list of vertex pairs with pairwise distinct endpoints.
using Matching = std::vector<Edge>;

inline void require_matching(const Matching& m, int n) {
    std::vector<char> used(n, 0);
    for (auto [u, v] : m) {
        require(u >= 0 && u < n && v >= 0 && v < n, "matching endpoint out of range");
        require(u != v, "matching edge with equal endpoints");
        require(!used[u] && !used[v], "vertex repeated in matching");
        used[u] = used[v] = 1;
    }
}

bool is_connected(const Graph& g);

// Hop distances from src; -1 where unreachable.
std::vector<int> bfs_distances(const Graph& g, int src);

// Text format: `p <n> <m>`, then `e <u> <v>` lines (0-indexed),
// then optional `c <v> <color>` lines, then optional `io input|output <idx> <vertex>` lines.
struct GraphFile {
    Graph graph;
    std::vector<int> color;          // empty when no c-lines
    std::vector<int> inputs;         // io input lines, by idx
    std::vector<int> outputs;        // io output lines, by idx
};

GraphFile read_graph_file(std::istream& in);
GraphFile read_graph_path(const std::string& path);
void write_graph_file(std::ostream& out, const Graph& g,
                      const std::vector<int>* color = nullptr,
                      const std::vector<int>* inputs = nullptr,
                      const std::vector<int>* outputs = nullptr);

Matching read_matching_file(std::istream& in);
Matching read_matching_path(const std::string& path);
void write_matching_file(std::ostream& out, const Matching& m);

}  // namespace linkagelab
