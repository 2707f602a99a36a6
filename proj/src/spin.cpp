#include "rr/spin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rr {

void IsingParams::validate() const {
  if (beta < 0.0) throw std::invalid_argument("ising: beta must be >= 0");
  if (j != 1 && j != -1) throw std::invalid_argument("ising: j must be +1 or -1");
}

void PottsParams::validate() const {
  if (beta < 0.0) throw std::invalid_argument("potts: beta must be >= 0");
  if (j != 1 && j != -1) throw std::invalid_argument("potts: j must be +1 or -1");
  if (q < 2) throw std::invalid_argument("potts: q must be >= 2");
}

namespace detail {

void collect_rejection_set(const Graph& g, const std::vector<std::uint8_t>& active, VertexId v,
                           RejectionRadius radius, std::vector<VertexId>& out) {
  out.clear();
  for (const AdjEntry& a : g.adjacency(v))
    if (active[a.neighbor]) out.push_back(a.neighbor);
  if (radius == RejectionRadius::neighbors2) {
    for (const AdjEntry& a : g.adjacency(v))
      for (const AdjEntry& b : g.adjacency(a.neighbor))
        if (b.neighbor != v && active[b.neighbor]) out.push_back(b.neighbor);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

}  // namespace detail

IsingSampler::IsingSampler(const Graph& g, IsingParams params) : graph_(&g), params_(params) {
  params_.validate();
}

IsingSampler::State IsingSampler::init() const {
  State s;
  s.spin.assign(graph_->vertex_count(), 0);
  s.active.assign(graph_->vertex_count(), 0);
  return s;
}

LocalField IsingSampler::local_field(const State& s, VertexId v) const {
  LocalField f;
  for (const AdjEntry& a : graph_->adjacency(v)) {
    if (!s.active[a.neighbor]) continue;
    ++f.d;
    f.s += s.spin[a.neighbor];
  }
  return f;
}

double IsingSampler::acceptance_probability(std::uint32_t d, std::int32_t s) const {
  if (d == 0) return 1.0;
  return std::cosh(params_.beta * static_cast<double>(s)) /
         std::cosh(params_.beta * static_cast<double>(d));
}

VertexId IsingSampler::choose_site(const State& s, RandomSource&) const {
  return detail::lowest_inactive(s);
}

StepOutcome IsingSampler::step(State& s, VertexId v, RandomSource& rng) const {
  if (is_complete(s)) throw std::logic_error("ising step: state already complete");
  StepOutcome out;
  out.site = v;

  const LocalField f = local_field(s, v);
  // Heat-bath proposal: P(+1) proportional to exp(beta*J*s).
  const double p_plus =
      1.0 / (1.0 + std::exp(-2.0 * params_.beta * static_cast<double>(params_.j) *
                            static_cast<double>(f.s)));
  const std::int8_t c = (rng.uniform() < p_plus) ? std::int8_t{1} : std::int8_t{-1};
  const double acc = acceptance_probability(f.d, f.s);

  if (rng.uniform() <= acc) {
    s.spin[v] = c;
    s.active[v] = 1;
    ++s.n_active;
    if (v == s.scan_hint) {
      VertexId h = v + 1;
      while (h < graph_->vertex_count() && s.active[h]) ++h;
      s.scan_hint = h;
    }
    out.kind = StepKind::accepted;
    return out;
  }

  out.kind = StepKind::rejected;
  detail::collect_rejection_set(*graph_, s.active, v, params_.rejection, s.scratch);
  for (VertexId x : s.scratch) {
    s.active[x] = 0;
    s.spin[x] = 0;
    --s.n_active;
    out.removed.push_back(x);
  }
  VertexId lo = v;
  for (VertexId x : out.removed) lo = std::min(lo, x);
  s.scan_hint = std::min(s.scan_hint, lo);
  return out;
}

nlohmann::json IsingSampler::encode_sample(const State& s) const {
  nlohmann::json arr = nlohmann::json::array();
  for (VertexId v = 0; v < graph_->vertex_count(); ++v) arr.push_back(static_cast<int>(s.spin[v]));
  return arr;
}

PottsSampler::PottsSampler(const Graph& g, PottsParams params) : graph_(&g), params_(params) {
  params_.validate();
}

PottsSampler::State PottsSampler::init() const {
  State s;
  s.color.assign(graph_->vertex_count(), 0);
  s.active.assign(graph_->vertex_count(), 0);
  return s;
}

double PottsSampler::site_weight_sum(const State& s, VertexId v,
                                     std::vector<double>& weights) const {
  std::vector<std::uint32_t> counts(params_.q + 1, 0);  // m_c per color, index 0 unused
  for (const AdjEntry& a : graph_->adjacency(v))
    if (s.active[a.neighbor]) ++counts[s.color[a.neighbor]];
  const double bj = params_.beta * static_cast<double>(params_.j);
  weights.assign(params_.q + 1, 0.0);
  double total = 0.0;
  for (std::uint32_t c = 1; c <= params_.q; ++c) {
    weights[c] = std::exp(bj * static_cast<double>(counts[c]));
    total += weights[c];
  }
  return total;
}

double PottsSampler::acceptance_probability(const State& s, VertexId v) const {
  std::vector<double> weights;
  const double z = site_weight_sum(s, v, weights);
  std::uint32_t d = 0;
  for (const AdjEntry& a : graph_->adjacency(v))
    if (s.active[a.neighbor]) ++d;
  const double bj = params_.beta * static_cast<double>(params_.j);
  // A fully concordant neighborhood maximizes the site partition function for
  // either sign of J (exp is convex in the count).
  const double z_max = std::exp(bj * static_cast<double>(d)) + static_cast<double>(params_.q - 1);
  return heat_bath_acceptance(z, z_max);
}

VertexId PottsSampler::choose_site(const State& s, RandomSource&) const {
  return detail::lowest_inactive(s);
}

StepOutcome PottsSampler::step(State& s, VertexId v, RandomSource& rng) const {
  if (is_complete(s)) throw std::logic_error("potts step: state already complete");
  StepOutcome out;
  out.site = v;

  std::vector<double> weights;
  const double z = site_weight_sum(s, v, weights);
  std::uint32_t d = 0;
  for (const AdjEntry& a : graph_->adjacency(v))
    if (s.active[a.neighbor]) ++d;

  // Draw the proposal color by inverse transform over colors in ascending order.
  double x = rng.uniform() * z;
  std::uint32_t c = params_.q;
  for (std::uint32_t cc = 1; cc <= params_.q; ++cc) {
    if (x < weights[cc]) {
      c = cc;
      break;
    }
    x -= weights[cc];
  }

  const double bj = params_.beta * static_cast<double>(params_.j);
  const double z_max = std::exp(bj * static_cast<double>(d)) + static_cast<double>(params_.q - 1);
  const double acc = heat_bath_acceptance(z, z_max);

  if (rng.uniform() <= acc) {
    s.color[v] = c;
    s.active[v] = 1;
    ++s.n_active;
    if (v == s.scan_hint) {
      VertexId h = v + 1;
      while (h < graph_->vertex_count() && s.active[h]) ++h;
      s.scan_hint = h;
    }
    out.kind = StepKind::accepted;
    return out;
  }

  out.kind = StepKind::rejected;
  detail::collect_rejection_set(*graph_, s.active, v, params_.rejection, s.scratch);
  for (VertexId xa : s.scratch) {
    s.active[xa] = 0;
    s.color[xa] = 0;
    --s.n_active;
    out.removed.push_back(xa);
  }
  VertexId lo = v;
  for (VertexId xa : out.removed) lo = std::min(lo, xa);
  s.scan_hint = std::min(s.scan_hint, lo);
  return out;
}

nlohmann::json PottsSampler::encode_sample(const State& s) const {
  nlohmann::json arr = nlohmann::json::array();
  for (VertexId v = 0; v < graph_->vertex_count(); ++v) arr.push_back(s.color[v]);
  return arr;
}

double ising_threshold(std::size_t delta) {
  if (delta < 1) throw std::invalid_argument("ising_threshold: delta must be >= 1");
  const double d = static_cast<double>(delta);
  return std::log1p(1.0 / d) / d;
}

double ising_drift_bound(std::size_t delta, double beta) {
  const double d = static_cast<double>(delta);
  return (d + 1.0) * std::exp(-beta * d) - d;
}

}  // namespace rr
