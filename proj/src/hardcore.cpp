#include "rr/hardcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace rr {

void HardcoreParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("hardcore: lambda must be > 0");
}

HardcoreSampler::HardcoreSampler(const Graph& g, HardcoreParams params)
    : graph_(&g), params_(params) {
  params_.validate();
}

HardcoreSampler::State HardcoreSampler::init() const {
  State s;
  const std::size_t n = graph_->vertex_count();
  s.color.assign(n, 0);
  s.active.assign(n, 0);
  s.component_active.assign(graph_->component_count(), 0);
  s.bfs_mark.assign(n, 0);
  return s;
}

VertexId HardcoreSampler::choose_basic(const State& s) const {
  VertexId v = s.scan_hint;
  while (s.active[v]) ++v;
  return v;
}

// Pick the inactive vertex of the first incomplete component that keeps the
// inactive region connected: the last vertex discovered by a breadth-first
// traversal of that region is a leaf of the traversal tree, so removing it
// cannot disconnect what remains. The choice depends only on the membership
// structure, never on the colors.
VertexId HardcoreSampler::choose_improved(State& s) const {
  const Graph& g = *graph_;
  std::uint32_t comp = UINT32_MAX;
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    if (s.component_active[c] < g.component_vertices(c).size()) {
      comp = c;
      break;
    }
  }
  VertexId root = UINT32_MAX;
  for (VertexId v : g.component_vertices(comp)) {
    if (!s.active[v]) {
      root = v;
      break;
    }
  }
  const std::uint32_t stamp = ++s.bfs_stamp;
  s.bfs_queue.clear();
  s.bfs_queue.push_back(root);
  s.bfs_mark[root] = stamp;
  std::size_t head = 0;
  VertexId last = root;
  while (head < s.bfs_queue.size()) {
    VertexId u = s.bfs_queue[head++];
    last = u;
    for (const AdjEntry& a : g.adjacency(u)) {
      if (s.active[a.neighbor] || s.bfs_mark[a.neighbor] == stamp) continue;
      s.bfs_mark[a.neighbor] = stamp;
      s.bfs_queue.push_back(a.neighbor);
    }
  }
  // With more than one inactive vertex in the component, the traversal ends at
  // a non-root leaf; with exactly one, last == root is the forced choice.
  return s.bfs_queue.size() > 1 ? s.bfs_queue.back() : last;
}

VertexId HardcoreSampler::choose_site(State& s, RandomSource&) const {
  return params_.variant == HardcoreParams::Variant::basic ? choose_basic(s)
                                                           : choose_improved(s);
}

StepOutcome HardcoreSampler::step(State& s, VertexId v, RandomSource& rng) const {
  if (is_complete(s)) throw std::logic_error("hardcore step: state already complete");
  const Graph& g = *graph_;
  StepOutcome out;
  out.site = v;

  auto activate = [&](std::uint8_t color) {
    s.color[v] = color;
    s.active[v] = 1;
    ++s.n_active;
    ++s.component_active[g.component_of_vertex(v)];
    if (params_.variant == HardcoreParams::Variant::basic && v == s.scan_hint) {
      VertexId h = v + 1;
      while (h < g.vertex_count() && s.active[h]) ++h;
      s.scan_hint = h;
    }
    out.kind = StepKind::accepted;
  };

  const double u = rng.uniform();
  if (u <= 1.0 / (1.0 + params_.lambda)) {
    activate(0);
    return out;
  }

  // Proposed occupied: find a conflicting occupied neighbor.
  VertexId w = UINT32_MAX;
  std::vector<VertexId> examined_before_w;  // neighbors of v looked at before w
  if (params_.variant == HardcoreParams::Variant::basic) {
    for (const AdjEntry& a : g.adjacency(v)) {
      if (s.color[a.neighbor] == 1) {
        w = a.neighbor;
        break;
      }
    }
    if (w != UINT32_MAX)
      for (const AdjEntry& a : g.adjacency(v)) {
        if (a.neighbor >= w) break;
        examined_before_w.push_back(a.neighbor);
      }
  } else {
    const auto adj = g.adjacency(v);
    if (!adj.empty()) {
      const std::size_t deg = adj.size();
      const std::size_t start = rng.uniform_int(deg);
      for (std::size_t j = 0; j < deg; ++j) {
        const VertexId u2 = adj[(start + j) % deg].neighbor;
        if (s.color[u2] == 1) {
          w = u2;
          break;
        }
        examined_before_w.push_back(u2);
      }
    }
  }

  if (w == UINT32_MAX) {
    activate(1);
    return out;
  }

  // Conflict: take back w, everything w's occupancy revealed (its neighbors),
  // and the neighbors of v whose colors the search read.
  last_search_examined = examined_before_w.size();
  out.kind = StepKind::rejected;
  auto remove_active = [&](VertexId x) {
    if (!s.active[x]) return;
    s.active[x] = 0;
    s.color[x] = 0;
    --s.n_active;
    --s.component_active[g.component_of_vertex(x)];
    out.removed.push_back(x);
  };
  remove_active(w);
  for (const AdjEntry& a : g.adjacency(w)) remove_active(a.neighbor);
  for (VertexId x : examined_before_w) remove_active(x);
  s.color[v] = 0;  // v was never activated
  if (params_.variant == HardcoreParams::Variant::basic) {
    VertexId lo = v;
    for (VertexId x : out.removed) lo = std::min(lo, x);
    s.scan_hint = std::min(s.scan_hint, lo);
  }
  std::sort(out.removed.begin(), out.removed.end());
  return out;
}

nlohmann::json HardcoreSampler::encode_sample(const State& s) const {
  nlohmann::json arr = nlohmann::json::array();
  for (VertexId v = 0; v < graph_->vertex_count(); ++v)
    if (s.color[v] == 1) arr.push_back(v);
  return arr;
}

double HardcoreSampler::potential(const State& s, double alpha) const {
  std::size_t occupied = 0;
  for (VertexId v = 0; v < graph_->vertex_count(); ++v) occupied += s.color[v];
  return static_cast<double>(s.n_active) - alpha * static_cast<double>(occupied);
}

double threshold_basic(std::size_t delta) {
  if (delta < 1) throw std::invalid_argument("threshold_basic: delta must be >= 1");
  return 1.0 / (2.0 * static_cast<double>(delta) - 1.0);
}

double threshold_improved(std::size_t delta) {
  const double denom = 3.0 * static_cast<double>(delta) - 4.0;
  if (denom <= 0.0)
    throw std::invalid_argument("threshold_improved: requires delta >= 2");
  return 4.0 / denom;
}

double lambda_for_drift(std::size_t delta, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("lambda_for_drift: gamma must be in (0,1)");
  return 1.0 / (2.0 * static_cast<double>(delta) / (1.0 - gamma) - 1.0);
}

}  // namespace rr
