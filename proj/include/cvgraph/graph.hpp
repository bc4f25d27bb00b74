#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cvgraph {

/// Ordered set of vertex indices, kept sorted ascending so that matrix
/// reductions are deterministic. Indices must be unique and non-negative;
/// range checks against a concrete graph or matrix happen at the point of use.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> members);
    VertexSet(std::initializer_list<int> members);

    const std::vector<int>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(int v) const;
    int max_index() const;  // -1 when empty

    bool operator==(const VertexSet& other) const { return members_ == other.members_; }

  private:
    std::vector<int> members_;
};

/// Undirected, unweighted graph on m vertices stored as a dense
/// symmetric {0,1} adjacency matrix with zero diagonal.
class Graph {
  public:
    Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return m_; }
    bool adjacent(int k, int l) const { return adj_(k, l) != 0.0; }
    int degree(int k) const;
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    /// m x m adjacency matrix with entries in {0,1}.
    const Eigen::MatrixXd& adjacency() const { return adj_; }

  private:
    int m_ = 0;
    Eigen::MatrixXd adj_;
};

Graph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);

/// Path 0-1-...-(m-1).
Graph path_graph(int vertex_count);

/// Complete graph on m vertices.
Graph complete_graph(int vertex_count);

/// Triangular tiling of a rows x cols grid: grid adjacency plus the
/// (r,c)-(r+1,c+1) diagonal of every unit cell. Vertices are numbered
/// row-major, vertex(r,c) = r*cols + c.
Graph triangular_lattice(int rows, int cols);

/// N(X) = {k not in X | exists l in X with adj(k,l) = 1}. Disjoint from X.
VertexSet neighborhood(const Graph& g, const VertexSet& x);

/// X together with its neighbours and its neighbours' neighbours,
/// i.e. every vertex at graph distance <= 2 from X.
VertexSet closed_two_neighborhood(const Graph& g, const VertexSet& x);

/// All vertices {0,...,m-1}.
VertexSet full_vertex_set(int vertex_count);

/// BFS distance from the nearest source vertex, -1 where unreachable.
std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources);

/// Every vertex reachable from vertex 0 (true for the empty relation on m=1).
bool is_connected(const Graph& g);

}  // namespace cvgraph
