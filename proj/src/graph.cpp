#include "lowcross/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "lowcross/io.hpp"

namespace lowcross {

Graph::Graph(uint32_t num_vertices, const std::vector<std::pair<uint32_t, uint32_t>>& edges)
    : adj_(num_vertices) {
    for (auto [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (u == v) continue;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        num_edges_ += nbrs.size();
    }
    num_edges_ /= 2;
}

Graph load_graph_edgelist(std::istream& is) {
    std::unordered_map<uint64_t, uint32_t> id_map;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    uint32_t next_id = 0;

    auto intern = [&](uint64_t raw) {
        auto [it, inserted] = id_map.emplace(raw, next_id);
        if (inserted) ++next_id;
        return it->second;
    };

    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') continue;

        uint64_t v[2];
        for (int k = 0; k < 2; ++k) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
                throw ParseError(line_no, "expected two vertex ids");
            uint64_t x = 0;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
                x = x * 10 + uint64_t(line[i] - '0');
                if (x > UINT32_MAX) throw ParseError(line_no, "vertex id out of range");
                ++i;
            }
            v[k] = x;
        }
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i < line.size()) throw ParseError(line_no, "trailing characters after edge");

        const uint32_t a = intern(v[0]);  // first appearance order fixes the
        const uint32_t b = intern(v[1]);  // dense ids, so intern sequentially
        edges.emplace_back(a, b);
    }
    if (next_id == 0) throw ParseError(line_no, "edge list contains no vertices");
    return Graph(next_id, edges);
}

Graph load_graph_edgelist_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return load_graph_edgelist(f);
}

SetSystem neighborhood_system(const Graph& g, uint32_t radius, std::string label) {
    const uint32_t n = g.num_vertices();
    std::vector<std::vector<uint32_t>> ranges(n);
    std::vector<uint32_t> dist(n, UINT32_MAX);
    std::vector<uint32_t> touched;
    std::queue<uint32_t> q;

    for (uint32_t src = 0; src < n; ++src) {
        auto& ball = ranges[src];
        dist[src] = 0;
        touched.assign(1, src);
        ball.push_back(src);
        q.push(src);
        while (!q.empty()) {
            uint32_t v = q.front();
            q.pop();
            if (dist[v] == radius) continue;
            for (uint32_t w : g.neighbors(v)) {
                if (dist[w] != UINT32_MAX) continue;
                dist[w] = dist[v] + 1;
                touched.push_back(w);
                ball.push_back(w);
                q.push(w);
            }
        }
        for (uint32_t v : touched) dist[v] = UINT32_MAX;
        std::sort(ball.begin(), ball.end());
    }
    return SetSystem(n, ranges, std::move(label));
}

}  // namespace lowcross
