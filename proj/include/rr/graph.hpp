#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rr {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId u, v;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct AdjEntry {
  VertexId neighbor;
  EdgeId edge;
};

// Immutable undirected simple graph with a fixed vertex numbering 0..n-1.
// Edges are stored sorted lexicographically and addressed by EdgeId; adjacency
// lists are sorted ascending by neighbor number. Safe to share across threads.
class Graph {
 public:
  static Graph from_edges(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges);

  // Line-oriented text: "u v" pairs, '#' comments, blank lines ignored, and an
  // optional leading header "n <count>". Vertex count defaults to 1 + max index.
  static Graph parse_edge_list(std::string_view text);
  static Graph load_edge_list(const std::string& path);

  static Graph make_path(std::size_t n);
  static Graph make_cycle(std::size_t n);
  static Graph make_grid2d(std::size_t rows, std::size_t cols);
  static Graph make_complete(std::size_t n);
  // family is one of path|cycle|grid2d|complete; size is "N" or "RxC" for grids.
  static Graph generate_family(const std::string& family, const std::string& size);

  std::size_t vertex_count() const { return degree_offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::size_t degree(VertexId v) const { return degree_offsets_[v + 1] - degree_offsets_[v]; }
  std::span<const AdjEntry> adjacency(VertexId v) const {
    return {adjacency_.data() + degree_offsets_[v], adjacency_.data() + degree_offsets_[v + 1]};
  }
  std::size_t max_degree() const { return max_degree_; }

  std::uint32_t component_of_vertex(VertexId v) const { return vertex_component_[v]; }
  std::size_t component_count() const { return component_vertices_.size(); }
  // Vertices of one component, ascending.
  const std::vector<VertexId>& component_vertices(std::uint32_t c) const {
    return component_vertices_[c];
  }

 private:
  Graph() = default;
  void build(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges);

  std::vector<Edge> edges_;
  std::vector<AdjEntry> adjacency_;        // grouped by vertex
  std::vector<std::size_t> degree_offsets_;  // size n+1
  std::size_t max_degree_ = 0;
  std::vector<std::uint32_t> vertex_component_;
  std::vector<std::vector<VertexId>> component_vertices_;
};

// Mutable edge-activation mask over a parent graph, the working structure for
// edge-indexed sampler state. Connectivity queries traverse active edges on
// demand; nothing incremental is kept, since rejection deletes whole components.
class EdgeSubgraph {
 public:
  explicit EdgeSubgraph(const Graph& g);

  const Graph& graph() const { return *g_; }
  bool is_active(EdgeId e) const { return active_[e] != 0; }
  void set_active(EdgeId e, bool on) { active_[e] = on ? 1 : 0; }
  std::size_t active_count() const;

  // True iff v and w lie in one component of (V, active edges). Bidirectional
  // search, so the cost is bounded by the smaller of the two components.
  bool connected(VertexId v, VertexId w) const;

  struct Component {
    std::vector<VertexId> vertices;  // ascending
    std::vector<EdgeId> edges;       // active edges with both ends inside, ascending
  };
  Component component_of(VertexId w) const;

  std::size_t count_components() const;  // isolated vertices count

 private:
  const Graph* g_;
  std::vector<std::uint8_t> active_;
  mutable std::vector<std::uint32_t> mark_a_, mark_b_;
  mutable std::uint32_t stamp_ = 0;
  mutable std::vector<VertexId> queue_a_, queue_b_;
};

// Deterministic spanning tree of (component_vertices ∪ {root}) using only
// component_edges plus the bridge edge: breadth-first from root, neighbors in
// ascending number order. Returns exactly |component_vertices| edge ids, sorted.
std::vector<EdgeId> spanning_tree(const Graph& g,
                                  std::span<const VertexId> component_vertices,
                                  std::span<const EdgeId> component_edges,
                                  EdgeId bridge, VertexId root);

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns true if the two sets were distinct.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<std::uint32_t> parent;
};

}  // namespace rr
