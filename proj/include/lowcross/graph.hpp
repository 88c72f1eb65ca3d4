#ifndef LOWCROSS_GRAPH_HPP
#define LOWCROSS_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lowcross/set_system.hpp"

namespace lowcross {

/// Simple undirected graph: no self-loops, no parallel edges, symmetric
/// adjacency with sorted neighbor lists.
class Graph {
public:
    /// Drops self-loops and duplicate edges; throws on out-of-range endpoints.
    Graph(uint32_t num_vertices, const std::vector<std::pair<uint32_t, uint32_t>>& edges);

    uint32_t num_vertices() const { return uint32_t(adj_.size()); }
    uint64_t num_edges() const { return num_edges_; }
    const std::vector<uint32_t>& neighbors(uint32_t v) const { return adj_[v]; }

private:
    std::vector<std::vector<uint32_t>> adj_;
    uint64_t num_edges_ = 0;
};

/// SNAP-style edge list: one "u v" pair per line, '#' comment lines allowed.
/// Vertex ids are re-indexed densely in order of first appearance; duplicate
/// edges and self-loops are dropped. Malformed lines raise ParseError.
Graph load_graph_edgelist(std::istream& is);
Graph load_graph_edgelist_file(const std::string& path);

/// Distance-r neighborhood set system: X = V, one range per vertex x holding
/// every vertex within BFS distance r of x (r = 1 gives closed neighborhoods).
SetSystem neighborhood_system(const Graph& g, uint32_t radius, std::string label = "");

}  // namespace lowcross

#endif
