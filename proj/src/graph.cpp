#include "rr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rr {

namespace {

std::invalid_argument parse_fail(std::size_t line_no, const std::string& what) {
  return std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges) {
  Graph g;
  g.build(n, std::move(edges));
  return g;
}

void Graph::build(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edge_pairs) {
  std::vector<Edge> edges;
  edges.reserve(edge_pairs.size());
  for (auto [u, v] : edge_pairs) {
    if (u == v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u >= n || v >= n)
      throw std::invalid_argument("vertex index out of range: " + std::to_string(std::max(u, v)) +
                                  " (n=" + std::to_string(n) + ")");
    if (u > v) std::swap(u, v);
    edges.push_back({u, v});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw std::invalid_argument("duplicate edge {" + std::to_string(edges[i].u) + "," +
                                  std::to_string(edges[i].v) + "}");
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  degree_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) degree_offsets_[v + 1] = degree_offsets_[v] + deg[v];
  adjacency_.resize(degree_offsets_[n]);
  std::vector<std::size_t> cursor(degree_offsets_.begin(), degree_offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    adjacency_[cursor[edges_[e].u]++] = {edges_[e].v, e};
    adjacency_[cursor[edges_[e].v]++] = {edges_[e].u, e};
  }
  // Edge ids ascend lexicographically, so each adjacency group is already
  // sorted by neighbor except across the two insert passes; sort to be sure.
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(degree_offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(degree_offsets_[v + 1]);
    std::sort(first, last, [](const AdjEntry& a, const AdjEntry& b) { return a.neighbor < b.neighbor; });
  }
  max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());

  UnionFind uf(n);
  for (const Edge& e : edges_) uf.unite(e.u, e.v);
  vertex_component_.assign(n, 0);
  std::vector<std::uint32_t> root_to_comp(n, UINT32_MAX);
  for (VertexId v = 0; v < n; ++v) {
    std::uint32_t r = uf.find(v);
    if (root_to_comp[r] == UINT32_MAX) {
      root_to_comp[r] = static_cast<std::uint32_t>(component_vertices_.size());
      component_vertices_.emplace_back();
    }
    vertex_component_[v] = root_to_comp[r];
    component_vertices_[root_to_comp[r]].push_back(v);
  }
}

Graph Graph::parse_edge_list(std::string_view text) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::optional<std::size_t> declared_n;
  std::size_t max_index = 0;
  bool saw_any_vertex = false;
  bool saw_content = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string s(line);
    std::istringstream in(s);
    std::string tok;
    if (!(in >> tok) || tok[0] == '#') continue;

    if (tok == "n") {
      if (saw_content) throw parse_fail(line_no, "header \"n <count>\" must come first");
      long long count = -1;
      if (!(in >> count) || count < 0) throw parse_fail(line_no, "bad vertex count in header");
      std::string extra;
      if (in >> extra) throw parse_fail(line_no, "trailing tokens after header");
      declared_n = static_cast<std::size_t>(count);
      saw_content = true;
      continue;
    }

    saw_content = true;
    long long u = 0, v = 0;
    auto parse_int = [&](const std::string& t, long long& out) {
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
      return ec == std::errc{} && p == t.data() + t.size();
    };
    std::string tok2;
    if (!parse_int(tok, u) || !(in >> tok2) || !parse_int(tok2, v))
      throw parse_fail(line_no, "expected \"u v\", got \"" + s + "\"");
    std::string extra;
    if (in >> extra) throw parse_fail(line_no, "trailing tokens after edge");
    if (u < 0 || v < 0) throw parse_fail(line_no, "negative vertex index");
    if (u == v) throw parse_fail(line_no, "self-loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    max_index = std::max({max_index, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
    saw_any_vertex = true;
  }

  std::size_t n = declared_n ? *declared_n : (saw_any_vertex ? max_index + 1 : 0);
  if (saw_any_vertex && n <= max_index)
    throw std::invalid_argument("header count " + std::to_string(n) +
                                " too small for vertex index " + std::to_string(max_index));
  return from_edges(n, std::move(edges));
}

Graph Graph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

Graph Graph::make_path(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path: size must be >= 1");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edges(n, std::move(e));
}

Graph Graph::make_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: size must be >= 3");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return from_edges(n, std::move(e));
}

Graph Graph::make_grid2d(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid2d: dimensions must be >= 1");
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  std::vector<std::pair<VertexId, VertexId>> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return from_edges(rows * cols, std::move(e));
}

Graph Graph::make_complete(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete: size must be >= 1");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return from_edges(n, std::move(e));
}

Graph Graph::generate_family(const std::string& family, const std::string& size) {
  auto parse_dim = [&](const std::string& s) -> std::size_t {
    std::size_t out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw std::invalid_argument("bad size \"" + s + "\"");
    return out;
  };
  if (family == "grid2d") {
    auto x = size.find('x');
    if (x == std::string::npos) {
      std::size_t n = parse_dim(size);
      return make_grid2d(n, n);
    }
    return make_grid2d(parse_dim(size.substr(0, x)), parse_dim(size.substr(x + 1)));
  }
  std::size_t n = parse_dim(size);
  if (family == "path") return make_path(n);
  if (family == "cycle") return make_cycle(n);
  if (family == "complete") return make_complete(n);
  throw std::invalid_argument("unknown graph family \"" + family + "\"");
}

EdgeSubgraph::EdgeSubgraph(const Graph& g)
    : g_(&g),
      active_(g.edge_count(), 0),
      mark_a_(g.vertex_count(), 0),
      mark_b_(g.vertex_count(), 0) {}

std::size_t EdgeSubgraph::active_count() const {
  std::size_t k = 0;
  for (auto a : active_) k += a;
  return k;
}

bool EdgeSubgraph::connected(VertexId v, VertexId w) const {
  if (v == w) return true;
  const std::uint32_t stamp = ++stamp_;
  queue_a_.clear();
  queue_b_.clear();
  queue_a_.push_back(v);
  queue_b_.push_back(w);
  mark_a_[v] = stamp;
  mark_b_[w] = stamp;
  std::size_t head_a = 0, head_b = 0;
  // Expand the two searches alternately one vertex at a time; whichever side
  // exhausts first has explored its whole component.
  for (;;) {
    if (head_a < queue_a_.size()) {
      VertexId u = queue_a_[head_a++];
      for (const AdjEntry& a : g_->adjacency(u)) {
        if (!active_[a.edge]) continue;
        if (mark_b_[a.neighbor] == stamp) return true;
        if (mark_a_[a.neighbor] != stamp) {
          mark_a_[a.neighbor] = stamp;
          queue_a_.push_back(a.neighbor);
        }
      }
    } else {
      return false;
    }
    if (head_b < queue_b_.size()) {
      VertexId u = queue_b_[head_b++];
      for (const AdjEntry& a : g_->adjacency(u)) {
        if (!active_[a.edge]) continue;
        if (mark_a_[a.neighbor] == stamp) return true;
        if (mark_b_[a.neighbor] != stamp) {
          mark_b_[a.neighbor] = stamp;
          queue_b_.push_back(a.neighbor);
        }
      }
    } else {
      return false;
    }
  }
}

EdgeSubgraph::Component EdgeSubgraph::component_of(VertexId w) const {
  const std::uint32_t stamp = ++stamp_;
  queue_a_.clear();
  queue_a_.push_back(w);
  mark_a_[w] = stamp;
  std::size_t head = 0;
  while (head < queue_a_.size()) {
    VertexId u = queue_a_[head++];
    for (const AdjEntry& a : g_->adjacency(u)) {
      if (!active_[a.edge] || mark_a_[a.neighbor] == stamp) continue;
      mark_a_[a.neighbor] = stamp;
      queue_a_.push_back(a.neighbor);
    }
  }
  Component comp;
  comp.vertices.assign(queue_a_.begin(), queue_a_.end());
  std::sort(comp.vertices.begin(), comp.vertices.end());
  for (VertexId u : comp.vertices)
    for (const AdjEntry& a : g_->adjacency(u))
      if (active_[a.edge] && u < a.neighbor) comp.edges.push_back(a.edge);
  std::sort(comp.edges.begin(), comp.edges.end());
  return comp;
}

std::size_t EdgeSubgraph::count_components() const {
  UnionFind uf(g_->vertex_count());
  std::size_t components = g_->vertex_count();
  for (EdgeId e = 0; e < g_->edge_count(); ++e)
    if (active_[e] && uf.unite(g_->edge(e).u, g_->edge(e).v)) --components;
  return components;
}

std::vector<EdgeId> spanning_tree(const Graph& g,
                                  std::span<const VertexId> component_vertices,
                                  std::span<const EdgeId> component_edges,
                                  EdgeId bridge, VertexId root) {
  std::vector<std::uint8_t> allowed(g.edge_count(), 0);
  for (EdgeId e : component_edges) allowed[e] = 1;
  allowed[bridge] = 1;

  std::vector<std::uint8_t> in_scope(g.vertex_count(), 0);
  for (VertexId v : component_vertices) in_scope[v] = 1;
  in_scope[root] = 1;

  std::vector<std::uint8_t> visited(g.vertex_count(), 0);
  std::vector<VertexId> queue{root};
  visited[root] = 1;
  std::vector<EdgeId> tree;
  std::size_t head = 0;
  while (head < queue.size()) {
    VertexId u = queue[head++];
    for (const AdjEntry& a : g.adjacency(u)) {
      if (!allowed[a.edge] || visited[a.neighbor]) continue;
      visited[a.neighbor] = 1;
      queue.push_back(a.neighbor);
      tree.push_back(a.edge);
    }
  }
  if (queue.size() != component_vertices.size() + 1)
    throw std::invalid_argument("spanning_tree: input is not connected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

}  // namespace rr
