#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "rr/graph.hpp"
#include "rr/random.hpp"

using namespace rr;

namespace {

std::size_t degree_sum(const Graph& g) {
  std::size_t s = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) s += g.degree(v);
  return s;
}

void check_symmetry(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexId prev = 0;
    bool first = true;
    for (const AdjEntry& a : g.adjacency(v)) {
      if (!first) CHECK(a.neighbor > prev);  // ascending, no duplicates
      prev = a.neighbor;
      first = false;
      bool found = false;
      for (const AdjEntry& b : g.adjacency(a.neighbor))
        if (b.neighbor == v && b.edge == a.edge) found = true;
      CHECK(found);
    }
  }
}

}  // namespace

TEST_CASE("edge list parsing: basic, header, comments") {
  const Graph p3 = Graph::parse_edge_list("0 1\n1 2");
  CHECK(p3.vertex_count() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.max_degree() == 2);

  const Graph withheader = Graph::parse_edge_list("n 4\n0 1");
  CHECK(withheader.vertex_count() == 4);
  CHECK(withheader.edge_count() == 1);
  CHECK(withheader.component_count() == 3);

  const Graph commented = Graph::parse_edge_list("# a comment\n\n0 1\n# another\n1 2\n");
  CHECK(commented.edge_count() == 2);
}

TEST_CASE("edge list parsing: malformed input is rejected with the line number") {
  CHECK_THROWS_AS(Graph::parse_edge_list("0 0"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 1\n0 1"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 1\n1 0"), std::invalid_argument);

  try {
    Graph::parse_edge_list("0 1\nbroken line\n");
    FAIL("expected parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  CHECK_THROWS_AS(Graph::parse_edge_list("n 2\n0 5"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 1\nn 5"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 -1"), std::invalid_argument);
}

TEST_CASE("family generators") {
  const Graph c5 = Graph::make_cycle(5);
  CHECK(c5.max_degree() == 2);
  CHECK(c5.edge_count() == 5);

  const Graph grid = Graph::make_grid2d(2, 2);
  CHECK(grid.vertex_count() == 4);
  CHECK(grid.edge_count() == 4);
  CHECK(grid.max_degree() == 2);

  const Graph k4 = Graph::make_complete(4);
  CHECK(k4.max_degree() == 3);
  CHECK(k4.edge_count() == 6);

  CHECK(Graph::make_path(1).edge_count() == 0);
  CHECK_THROWS_AS(Graph::make_path(0), std::invalid_argument);
  CHECK_THROWS_AS(Graph::make_cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(Graph::generate_family("path", "0"), std::invalid_argument);
  CHECK_THROWS_AS(Graph::generate_family("moebius", "5"), std::invalid_argument);

  const Graph g32 = Graph::generate_family("grid2d", "3x2");
  CHECK(g32.vertex_count() == 6);
  CHECK(g32.edge_count() == 7);
  CHECK(Graph::generate_family("grid2d", "3").vertex_count() == 9);
}

TEST_CASE("degree sum and adjacency symmetry across families and random graphs") {
  RandomSource rng(7);
  std::vector<Graph> graphs;
  graphs.push_back(Graph::make_cycle(9));
  graphs.push_back(Graph::make_grid2d(3, 4));
  graphs.push_back(Graph::make_complete(6));
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 6 + rng.uniform_int(6);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (rng.uniform() < 0.4) edges.emplace_back(u, v);
    graphs.push_back(Graph::from_edges(n, edges));
  }
  for (const Graph& g : graphs) {
    CHECK(degree_sum(g) == 2 * g.edge_count());
    check_symmetry(g);
    std::size_t maxdeg = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
    CHECK(g.max_degree() == maxdeg);
  }
}

TEST_CASE("subgraph connectivity queries") {
  const Graph tri = Graph::make_complete(3);
  EdgeSubgraph sub(tri);
  sub.set_active(0, true);  // edge {0,1}

  CHECK(sub.connected(0, 1));
  CHECK_FALSE(sub.connected(0, 2));
  CHECK(sub.connected(2, 2));  // a vertex is its own component

  CHECK(sub.count_components() == 2);
  EdgeSubgraph empty(tri);
  CHECK(empty.count_components() == 3);
  CHECK(empty.connected(1, 1));

  EdgeSubgraph full(tri);
  for (EdgeId e = 0; e < 3; ++e) full.set_active(e, true);
  CHECK(full.count_components() == 1);
  const auto comp = full.component_of(0);
  CHECK(comp.vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(comp.edges.size() == 3);
}

TEST_CASE("component extraction on a path") {
  const Graph p3 = Graph::make_path(3);
  EdgeSubgraph sub(p3);
  sub.set_active(0, true);  // {0,1}
  const auto comp = sub.component_of(1);
  CHECK(comp.vertices == std::vector<VertexId>{0, 1});
  CHECK(comp.edges == std::vector<EdgeId>{0});

  const auto isolated = sub.component_of(2);
  CHECK(isolated.vertices == std::vector<VertexId>{2});
  CHECK(isolated.edges.empty());
}

TEST_CASE("connectivity agrees with the component-count change of adding an edge") {
  RandomSource rng(99);
  for (const Graph& g : {Graph::make_grid2d(3, 3), Graph::make_complete(5), Graph::make_cycle(8)}) {
    for (int trial = 0; trial < 40; ++trial) {
      EdgeSubgraph sub(g);
      for (EdgeId e = 0; e < g.edge_count(); ++e) sub.set_active(e, rng.uniform() < 0.4);
      const EdgeId probe = static_cast<EdgeId>(rng.uniform_int(g.edge_count()));
      if (sub.is_active(probe)) continue;
      const std::size_t before = sub.count_components();
      const bool joined = sub.connected(g.edge(probe).u, g.edge(probe).v);
      sub.set_active(probe, true);
      const std::size_t after = sub.count_components();
      CHECK(before - after == (joined ? 0u : 1u));
    }
  }
}

TEST_CASE("spanning tree construction") {
  const Graph p3 = Graph::make_path(3);
  // component {1,2} with its edge, bridged to root 0 by edge {0,1}
  const std::vector<VertexId> comp{1, 2};
  const std::vector<EdgeId> inner{1};  // edge {1,2}
  const auto tree = spanning_tree(p3, comp, inner, 0, 0);
  CHECK(tree == std::vector<EdgeId>{0, 1});

  const std::vector<VertexId> single{1};
  const auto tiny = spanning_tree(p3, single, {}, 0, 0);
  CHECK(tiny == std::vector<EdgeId>{0});
}

TEST_CASE("spanning tree of a triangle component is acyclic, connected, and includes the bridge") {
  const Graph k4 = Graph::make_complete(4);
  // K4 edges lex: 0:{0,1} 1:{0,2} 2:{0,3} 3:{1,2} 4:{1,3} 5:{2,3}
  const std::vector<VertexId> comp{1, 2, 3};
  const std::vector<EdgeId> inner{3, 4, 5};
  const auto tree = spanning_tree(k4, comp, inner, 0, 0);
  CHECK(tree.size() == 3);
  CHECK(std::find(tree.begin(), tree.end(), 0u) != tree.end());  // bridge {0,1}
  UnionFind uf(4);
  for (EdgeId e : tree) CHECK(uf.unite(k4.edge(e).u, k4.edge(e).v));  // acyclic
  for (VertexId v : comp) CHECK(uf.find(v) == uf.find(0));            // spans

  const std::vector<VertexId> disconnected{1, 3};
  CHECK_THROWS_AS(spanning_tree(k4, disconnected, {}, 0, 0), std::invalid_argument);
}

TEST_CASE("graph components are precomputed") {
  const Graph g = Graph::parse_edge_list("n 6\n0 1\n3 4\n4 5");
  CHECK(g.component_count() == 3);
  CHECK(g.component_of_vertex(0) == g.component_of_vertex(1));
  CHECK(g.component_of_vertex(3) == g.component_of_vertex(5));
  CHECK(g.component_of_vertex(2) != g.component_of_vertex(3));
  CHECK(g.component_vertices(g.component_of_vertex(3)) == std::vector<VertexId>{3, 4, 5});
}
