#include "rr/coloring.hpp"

#include <algorithm>
#include <stdexcept>

#include "rr/spin.hpp"

namespace rr {

void ColoringParams::validate() const {
  if (k < 2) throw std::invalid_argument("coloring: k must be >= 2");
}

ColoringSampler::ColoringSampler(const Graph& g, ColoringParams params)
    : graph_(&g), params_(params) {
  params_.validate();
  if (params_.k <= g.max_degree())
    throw std::invalid_argument("coloring: k must exceed the maximum degree (" +
                                std::to_string(g.max_degree()) + ") so every site is extendable");
}

ColoringSampler::State ColoringSampler::init() const {
  State s;
  s.color.assign(graph_->vertex_count(), 0);
  s.active.assign(graph_->vertex_count(), 0);
  return s;
}

VertexId ColoringSampler::choose_site(const State& s, RandomSource&) const {
  VertexId v = s.scan_hint;
  while (s.active[v]) ++v;
  return v;
}

StepOutcome ColoringSampler::step(State& s, VertexId v, RandomSource& rng) const {
  if (is_complete(s)) throw std::logic_error("coloring step: state already complete");
  const Graph& g = *graph_;
  StepOutcome out;
  out.site = v;

  // Distinct colors used by active neighbors, ascending.
  s.color_scratch.clear();
  for (const AdjEntry& a : g.adjacency(v))
    if (s.active[a.neighbor]) s.color_scratch.push_back(s.color[a.neighbor]);
  std::sort(s.color_scratch.begin(), s.color_scratch.end());
  s.color_scratch.erase(std::unique(s.color_scratch.begin(), s.color_scratch.end()),
                        s.color_scratch.end());
  const std::uint32_t a = static_cast<std::uint32_t>(s.color_scratch.size());

  // Uniform proposal over the k - a legal colors: walk 1..k skipping used ones.
  std::uint32_t idx = static_cast<std::uint32_t>(rng.uniform_int(params_.k - a));
  std::uint32_t c = 0;
  std::size_t used_pos = 0;
  for (std::uint32_t cc = 1; cc <= params_.k; ++cc) {
    if (used_pos < s.color_scratch.size() && s.color_scratch[used_pos] == cc) {
      ++used_pos;
      continue;
    }
    if (idx == 0) {
      c = cc;
      break;
    }
    --idx;
  }

  const double acc = static_cast<double>(params_.k - a) / static_cast<double>(params_.k);
  if (rng.uniform() <= acc) {
    s.color[v] = c;
    s.active[v] = 1;
    ++s.n_active;
    if (v == s.scan_hint) {
      VertexId h = v + 1;
      while (h < g.vertex_count() && s.active[h]) ++h;
      s.scan_hint = h;
    }
    out.kind = StepKind::accepted;
    return out;
  }

  out.kind = StepKind::rejected;
  if (params_.rejection == ColoringRejection::restart) {
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      if (!s.active[x]) continue;
      s.active[x] = 0;
      s.color[x] = 0;
      out.removed.push_back(x);
    }
    s.n_active = 0;
    s.scan_hint = 0;
    return out;
  }

  const RejectionRadius radius = params_.rejection == ColoringRejection::neighbors
                                     ? RejectionRadius::neighbors
                                     : RejectionRadius::neighbors2;
  detail::collect_rejection_set(g, s.active, v, radius, s.scratch);
  for (VertexId x : s.scratch) {
    s.active[x] = 0;
    s.color[x] = 0;
    --s.n_active;
    out.removed.push_back(x);
  }
  VertexId lo = v;
  for (VertexId x : out.removed) lo = std::min(lo, x);
  s.scan_hint = std::min(s.scan_hint, lo);
  return out;
}

nlohmann::json ColoringSampler::encode_sample(const State& s) const {
  nlohmann::json arr = nlohmann::json::array();
  for (VertexId v = 0; v < graph_->vertex_count(); ++v) arr.push_back(s.color[v]);
  return arr;
}

ColoringRegimeNote coloring_regime_note(std::size_t delta, std::uint32_t k,
                                        std::optional<double> measured_drift) {
  ColoringRegimeNote note;
  note.delta = delta;
  note.k = k;
  note.guarantee =
      "linear expected steps when k grows like delta^4 (asymptotic; the constant is "
      "unspecified, so no numeric cutoff is computed)";
  note.below_extendable = k <= delta;
  note.measured_drift = measured_drift;
  return note;
}

}  // namespace rr
