#include "cvgraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace cvgraph {

VertexSet::VertexSet(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw std::invalid_argument("VertexSet: duplicate vertex index");
    }
    if (!members_.empty() && members_.front() < 0) {
        throw std::invalid_argument("VertexSet: negative vertex index");
    }
}

VertexSet::VertexSet(std::initializer_list<int> members)
    : VertexSet(std::vector<int>(members)) {}

bool VertexSet::contains(int v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

int VertexSet::max_index() const {
    return members_.empty() ? -1 : members_.back();
}

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) : m_(vertex_count) {
    if (vertex_count < 1) {
        throw std::invalid_argument("Graph: vertex count must be positive");
    }
    adj_ = Eigen::MatrixXd::Zero(m_, m_);
    for (const auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= m_ || j >= m_) {
            throw std::invalid_argument("Graph: edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") out of range for m=" +
                                        std::to_string(m_));
        }
        if (i == j) {
            throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
        }
        adj_(i, j) = 1.0;
        adj_(j, i) = 1.0;
    }
}

int Graph::degree(int k) const {
    if (k < 0 || k >= m_) throw std::invalid_argument("Graph::degree: vertex out of range");
    return static_cast<int>(adj_.row(k).sum());
}

int Graph::edge_count() const {
    return static_cast<int>(adj_.sum() / 2.0);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m_; ++i) {
        for (int j = i + 1; j < m_; ++j) {
            if (adj_(i, j) != 0.0) out.emplace_back(i, j);
        }
    }
    return out;
}

Graph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    return Graph(vertex_count, edges);
}

Graph path_graph(int vertex_count) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < vertex_count; ++i) edges.emplace_back(i, i + 1);
    return Graph(vertex_count, edges);
}

Graph complete_graph(int vertex_count) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < vertex_count; ++i)
        for (int j = i + 1; j < vertex_count; ++j) edges.emplace_back(i, j);
    return Graph(vertex_count, edges);
}

Graph triangular_lattice(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("triangular_lattice: rows and cols must be >= 1");
    }
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            if (r + 1 < rows && c + 1 < cols) edges.emplace_back(id(r, c), id(r + 1, c + 1));
        }
    }
    return Graph(rows * cols, edges);
}

namespace {

void check_members(const Graph& g, const VertexSet& x) {
    if (x.max_index() >= g.vertex_count()) {
        throw std::invalid_argument("vertex set index " + std::to_string(x.max_index()) +
                                    " out of range for m=" + std::to_string(g.vertex_count()));
    }
}

}  // namespace

VertexSet neighborhood(const Graph& g, const VertexSet& x) {
    check_members(g, x);
    std::vector<int> out;
    for (int k = 0; k < g.vertex_count(); ++k) {
        if (x.contains(k)) continue;
        for (int l : x.members()) {
            if (g.adjacent(k, l)) {
                out.push_back(k);
                break;
            }
        }
    }
    return VertexSet(std::move(out));
}

VertexSet closed_two_neighborhood(const Graph& g, const VertexSet& x) {
    check_members(g, x);
    const VertexSet n1 = neighborhood(g, x);
    const VertexSet n2 = neighborhood(g, n1);
    std::vector<bool> in(g.vertex_count(), false);
    for (int v : x.members()) in[v] = true;
    for (int v : n1.members()) in[v] = true;
    for (int v : n2.members()) in[v] = true;
    std::vector<int> out;
    for (int k = 0; k < g.vertex_count(); ++k) {
        if (in[k]) out.push_back(k);
    }
    return VertexSet(std::move(out));
}

VertexSet full_vertex_set(int vertex_count) {
    std::vector<int> all(vertex_count);
    for (int i = 0; i < vertex_count; ++i) all[i] = i;
    return VertexSet(std::move(all));
}

std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources) {
    check_members(g, sources);
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue;
    for (int v : sources.members()) {
        dist[v] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int k = 0; k < g.vertex_count(); ++k) {
            if (g.adjacent(v, k) && dist[k] < 0) {
                dist[k] = dist[v] + 1;
                queue.push_back(k);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    const auto dist = bfs_distances(g, VertexSet{0});
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

}  // namespace cvgraph
