#include "rr/random_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rr {

void RCParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random cluster: p must be in [0,1]");
  if (!(q > 1.0)) throw std::invalid_argument("random cluster: q must be > 1");
}

RandomClusterSampler::RandomClusterSampler(const Graph& g, RCParams params)
    : graph_(&g), params_(params) {
  params_.validate();
}

RandomClusterSampler::State RandomClusterSampler::init() const {
  State s(*graph_);
  s.in_set.assign(graph_->edge_count(), 0);
  return s;
}

EdgeId RandomClusterSampler::choose_site(const State& s, RandomSource&) const {
  EdgeId e = s.scan_hint;
  while (s.in_set[e]) ++e;
  return e;
}

StepOutcome RandomClusterSampler::step(State& s, EdgeId e, RandomSource& rng) const {
  if (is_complete(s)) throw std::logic_error("random cluster step: state already complete");
  StepOutcome out;
  out.site = e;
  const Graph& g = *graph_;
  const VertexId v = g.edge(e).u;  // oriented (v,w): lower endpoint first
  const VertexId w = g.edge(e).v;

  auto admit = [&](bool occupied) {
    s.in_set[e] = 1;
    ++s.n_in_set;
    s.occupied.set_active(e, occupied);
    if (e == s.scan_hint) {
      EdgeId h = e + 1;
      while (h < g.edge_count() && s.in_set[h]) ++h;
      s.scan_hint = h;
    }
    out.kind = StepKind::accepted;
  };

  const bool propose_occupied = rng.uniform() < params_.p;

  if (s.occupied.connected(v, w)) {
    // Joining an already-connected pair never changes the component count.
    admit(propose_occupied);
    return out;
  }
  if (!propose_occupied) {
    admit(false);
    return out;
  }
  if (rng.uniform() <= 1.0 / params_.q) {
    admit(true);
    return out;
  }

  // Rejection: the attempt revealed that w's component does not reach v.
  // Remove every tracked edge touching that component, occupied or not.
  out.kind = StepKind::rejected;
  EdgeSubgraph::Component comp = s.occupied.component_of(w);
  out.removed_component_size = static_cast<std::uint32_t>(comp.vertices.size());
  for (VertexId cv : comp.vertices) {
    for (const AdjEntry& a : g.adjacency(cv)) {
      if (!s.in_set[a.edge]) continue;
      s.in_set[a.edge] = 0;
      --s.n_in_set;
      s.occupied.set_active(a.edge, false);
      out.removed.push_back(a.edge);
    }
  }
  std::sort(out.removed.begin(), out.removed.end());
  out.removed.erase(std::unique(out.removed.begin(), out.removed.end()), out.removed.end());

  if (params_.tree_trick) {
    // Spanning tree over the removed component plus v, bridged by the
    // attempted edge; its edges re-enter with the tree-conditional law.
    std::vector<EdgeId> tree = spanning_tree(g, comp.vertices, comp.edges, e, v);
    const double include = params_.rho() / (1.0 - params_.p + params_.rho());
    for (EdgeId te : tree) {
      s.in_set[te] = 1;
      ++s.n_in_set;
      s.occupied.set_active(te, rng.uniform() < include);
      out.restored.push_back(te);
    }
  }

  EdgeId lo = e;
  for (EdgeId x : out.removed) lo = std::min(lo, x);
  s.scan_hint = std::min(s.scan_hint, lo);
  return out;
}

nlohmann::json RandomClusterSampler::encode_sample(const State& s) const {
  nlohmann::json arr = nlohmann::json::array();
  for (EdgeId e = 0; e < graph_->edge_count(); ++e)
    if (s.occupied.is_active(e))
      arr.push_back(nlohmann::json::array({graph_->edge(e).u, graph_->edge(e).v}));
  return arr;
}

double RandomClusterSampler::potential_alpha() const {
  if (params_.p >= 1.0)
    throw std::invalid_argument("potential alpha undefined at p = 1");
  const double delta = static_cast<double>(graph_->max_degree());
  return (delta - 2.0) * (1.0 - params_.p + params_.rho()) / (1.0 - params_.p);
}

double RandomClusterSampler::potential(const State& s) const {
  return static_cast<double>(s.n_in_set) -
         potential_alpha() * static_cast<double>(s.occupied.count_components());
}

double rc_threshold(std::size_t delta, double q, bool tree_trick) {
  if (delta < 2) throw std::invalid_argument("rc_threshold: delta must be >= 2");
  if (!(q > 1.0)) throw std::invalid_argument("rc_threshold: q must be > 1");
  const double d = static_cast<double>(delta);
  const double iq = 1.0 / q;
  if (!tree_trick) return 1.0 / (d - iq);
  const double disc = (d - iq) * (d - iq) - 4.0 * (1.0 - iq) * (d - 1.0);
  if (disc < 0.0)
    throw std::logic_error("rc_threshold: negative discriminant");  // (d-2+1/q)^2, cannot happen
  return (d - iq - std::sqrt(disc)) / (2.0 * (1.0 - iq) * (d - 1.0));
}

std::vector<std::uint32_t> rc_to_potts(const Graph& g,
                                       const std::vector<std::uint8_t>& occupied_edges,
                                       std::uint32_t q_colors, RandomSource& rng) {
  if (q_colors < 2) throw std::invalid_argument("rc_to_potts: q must be an integer >= 2");
  UnionFind uf(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (occupied_edges[e]) uf.unite(g.edge(e).u, g.edge(e).v);
  std::vector<std::uint32_t> color(g.vertex_count(), 0);
  std::vector<std::uint32_t> root_color(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t r = uf.find(v);
    if (root_color[r] == 0)
      root_color[r] = static_cast<std::uint32_t>(rng.uniform_int(q_colors)) + 1;
    color[v] = root_color[r];
  }
  return color;
}

}  // namespace rr
