#pragma once

#include <cstdint>
#include <vector>

#include "rr/engine.hpp"
#include "rr/graph.hpp"

namespace rr {

struct HardcoreParams {
  double lambda = 1.0;  // fugacity: weight per occupied vertex
  enum class Variant { basic, improved } variant = Variant::basic;
  void validate() const;
};

// Exact sampler for the hard-core gas model: independent sets weighted by
// lambda^|S|. Sites are added one at a time under heat-bath proposals; a
// conflict rejects and takes back only the vertices whose colors the conflict
// revealed. The `improved` variant keeps the inactive region connected within
// each graph component and searches the conflicting neighbor from a random
// cyclic start, which shrinks the rejection set.
class HardcoreSampler {
 public:
  struct State {
    std::vector<std::uint8_t> color;   // 0/1; zero everywhere outside the active set
    std::vector<std::uint8_t> active;  // membership in V_t
    std::uint32_t n_active = 0;
    VertexId scan_hint = 0;  // all vertices below this are active (basic variant)
    std::vector<std::uint32_t> component_active;  // per graph component
    // scratch for the improved variant's complement traversal
    std::vector<VertexId> bfs_queue;
    std::vector<std::uint32_t> bfs_mark;
    std::uint32_t bfs_stamp = 0;
  };

  HardcoreSampler(const Graph& g, HardcoreParams params);

  State init() const;
  bool is_complete(const State& s) const { return s.n_active == graph_->vertex_count(); }
  std::size_t active_count(const State& s) const { return s.n_active; }

  VertexId choose_site(State& s, RandomSource& rng) const;
  VertexId choose_site(const State& s, RandomSource& rng) const {
    return choose_site(const_cast<State&>(s), rng);
  }
  StepOutcome step(State& s, VertexId v, RandomSource& rng) const;

  nlohmann::json encode_sample(const State& s) const;  // sorted occupied vertices

  // phi = |V_t| - alpha * (occupied count)
  double potential(const State& s, double alpha) const;

  const Graph& graph() const { return *graph_; }
  const HardcoreParams& params() const { return params_; }

  // Number of neighbors of v examined before the conflicting vertex was found
  // in the most recent rejecting step (improved variant measurement hook).
  mutable std::uint64_t last_search_examined = 0;

 private:
  VertexId choose_basic(const State& s) const;
  VertexId choose_improved(State& s) const;

  const Graph* graph_;
  HardcoreParams params_;
};

// Largest fugacity with guaranteed positive drift for the basic variant.
double threshold_basic(std::size_t delta);
// Potential-function bound for the improved variant: 4/(3*delta - 4).
double threshold_improved(std::size_t delta);
// Largest fugacity giving per-step drift >= gamma, hence expected iterations
// <= n/gamma.
double lambda_for_drift(std::size_t delta, double gamma);
// alpha used by the improved-variant potential analysis.
inline double default_potential_alpha(std::size_t delta) { return 0.75 * static_cast<double>(delta); }

}  // namespace rr
