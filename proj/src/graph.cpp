#include "linkagelab/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace linkagelab {

bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    auto dist = bfs_distances(g, 0);
    for (int v = 0; v < g.n(); ++v) {
        if (dist[v] < 0) return false;
    }
    return true;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.n(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

int parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw ParseError(line_no, "bad integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError(line_no, "bad integer '" + tok + "'");
    }
}

}  // namespace

GraphFile read_graph_file(std::istream& in) {
    GraphFile out;
    std::string line;
    int line_no = 0;
    bool have_p = false;
    int declared_m = 0;
    std::vector<std::pair<int, int>> io_in, io_out;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "p") {
            if (have_p) throw ParseError(line_no, "duplicate p line");
            if (toks.size() != 3) throw ParseError(line_no, "expected: p <n> <m>");
            int n = parse_int(toks[1], line_no);
            declared_m = parse_int(toks[2], line_no);
            if (n < 0 || declared_m < 0) throw ParseError(line_no, "negative count in p line");
            out.graph = Graph(n);
            have_p = true;
        } else if (toks[0] == "e") {
            if (!have_p) throw ParseError(line_no, "e line before p line");
            if (toks.size() != 3) throw ParseError(line_no, "expected: e <u> <v>");
            int u = parse_int(toks[1], line_no);
            int v = parse_int(toks[2], line_no);
            try {
                out.graph.add_edge(u, v);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line_no, ex.what());
            }
        } else if (toks[0] == "c") {
            if (!have_p) throw ParseError(line_no, "c line before p line");
            if (toks.size() != 3) throw ParseError(line_no, "expected: c <v> <color>");
            int v = parse_int(toks[1], line_no);
            int col = parse_int(toks[2], line_no);
            if (v < 0 || v >= out.graph.n()) throw ParseError(line_no, "colored vertex out of range");
            if (out.color.empty()) out.color.assign(out.graph.n(), -1);
            out.color[v] = col;
        } else if (toks[0] == "io") {
            if (!have_p) throw ParseError(line_no, "io line before p line");
            if (toks.size() != 4) throw ParseError(line_no, "expected: io input|output <idx> <vertex>");
            int idx = parse_int(toks[2], line_no);
            int v = parse_int(toks[3], line_no);
            if (v < 0 || v >= out.graph.n()) throw ParseError(line_no, "io vertex out of range");
            if (idx < 0) throw ParseError(line_no, "negative io index");
            if (toks[1] == "input") {
                io_in.emplace_back(idx, v);
            } else if (toks[1] == "output") {
                io_out.emplace_back(idx, v);
            } else {
                throw ParseError(line_no, "io kind must be input or output");
            }
        } else {
            throw ParseError(line_no, "unknown line type '" + toks[0] + "'");
        }
    }
    if (!have_p) throw ParseError(line_no == 0 ? 1 : line_no, "missing p line");
    if (out.graph.m() != declared_m) {
        throw ParseError(line_no, "p line declares " + std::to_string(declared_m) + " edges, file has " +
                                      std::to_string(out.graph.m()));
    }
    if (!out.color.empty()) {
        for (int v = 0; v < out.graph.n(); ++v) {
            if (out.color[v] < 0) throw ParseError(line_no, "vertex " + std::to_string(v) + " missing a c line");
        }
    }
    auto fill_io = [&](std::vector<std::pair<int, int>>& raw, std::vector<int>& dst, const char* what) {
        if (raw.empty()) return;
        dst.assign(raw.size(), -1);
        for (auto [idx, v] : raw) {
            if (idx >= static_cast<int>(raw.size()) || dst[idx] != -1) {
                throw ParseError(line_no, std::string(what) + " indices must be 0..count-1 without repeats");
            }
            dst[idx] = v;
        }
    };
    fill_io(io_in, out.inputs, "io input");
    fill_io(io_out, out.outputs, "io output");
    out.graph.normalize();
    return out;
}

GraphFile read_graph_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(1, "cannot open '" + path + "'");
    return read_graph_file(in);
}

void write_graph_file(std::ostream& out, const Graph& g, const std::vector<int>* color,
                      const std::vector<int>* inputs, const std::vector<int>* outputs) {
    out << "p " << g.n() << " " << g.m() << "\n";
    auto sorted = g.edges();
    std::sort(sorted.begin(), sorted.end());
    for (auto [u, v] : sorted) out << "e " << u << " " << v << "\n";
    if (color) {
        for (int v = 0; v < g.n(); ++v) out << "c " << v << " " << (*color)[v] << "\n";
    }
    if (inputs) {
        for (std::size_t i = 0; i < inputs->size(); ++i) out << "io input " << i << " " << (*inputs)[i] << "\n";
    }
    if (outputs) {
        for (std::size_t i = 0; i < outputs->size(); ++i) out << "io output " << i << " " << (*outputs)[i] << "\n";
    }
}

Matching read_matching_file(std::istream& in) {
    Matching m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw ParseError(line_no, "expected: <i> <j>");
        m.emplace_back(parse_int(toks[0], line_no), parse_int(toks[1], line_no));
    }
    return m;
}

Matching read_matching_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(1, "cannot open '" + path + "'");
    return read_matching_file(in);
}

void write_matching_file(std::ostream& out, const Matching& m) {
    for (auto [u, v] : m) out << u << " " << v << "\n";
}

}  // namespace linkagelab
