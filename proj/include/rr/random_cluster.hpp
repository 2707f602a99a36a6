#pragma once

#include <cstdint>
#include <vector>

#include "rr/engine.hpp"
#include "rr/graph.hpp"

namespace rr {

struct RCParams {
  double p = 0.5;          // per-edge inclusion weight, in [0,1]
  double q = 2.0;          // component weight, > 1
  bool tree_trick = true;  // re-sample a spanning tree over the removed component
  double rho() const { return p / q; }
  void validate() const;
};

// Random cluster model over edge subsets A with weight
// p^|A| (1-p)^|E\A| q^(c(A)). Edges are visited in ascending id order; the
// oriented attempt (v,w) uses the lower endpoint as v, and a rejection removes
// the component of w. With the tree trick, a spanning tree over that component
// plus v (always containing the attempted edge) is re-sampled edge by edge with
// inclusion probability rho/(1-p+rho), which is the exact conditional law on a
// tree.
class RandomClusterSampler {
 public:
  struct State {
    std::vector<std::uint8_t> in_set;  // membership in E_t
    EdgeSubgraph occupied;             // edges colored 1 (subset of E_t)
    std::uint32_t n_in_set = 0;
    EdgeId scan_hint = 0;
    explicit State(const Graph& g) : occupied(g) {}
  };

  RandomClusterSampler(const Graph& g, RCParams params);

  State init() const;
  bool is_complete(const State& s) const { return s.n_in_set == graph_->edge_count(); }
  std::size_t active_count(const State& s) const { return s.n_in_set; }

  EdgeId choose_site(const State& s, RandomSource&) const;
  StepOutcome step(State& s, EdgeId e, RandomSource& rng) const;

  nlohmann::json encode_sample(const State& s) const;  // occupied edges as [u,v] pairs

  // phi = |E_t| - alpha * c(A_t) with alpha = (delta-2)(1-p+rho)/(1-p).
  double potential(const State& s) const;
  double potential_alpha() const;

  const Graph& graph() const { return *graph_; }
  const RCParams& params() const { return params_; }

 private:
  const Graph* graph_;
  RCParams params_;
};

// Largest p with a linear-expected-steps guarantee for maximum degree delta.
double rc_threshold(std::size_t delta, double q, bool tree_trick);

// Project an edge configuration to a Potts coloring: each component of
// (V, occupied) gets one uniform color in 1..q_colors shared by its vertices.
// Exact for the concordance-weighted Potts law when p = 1 - exp(-beta).
std::vector<std::uint32_t> rc_to_potts(const Graph& g,
                                       const std::vector<std::uint8_t>& occupied_edges,
                                       std::uint32_t q_colors, RandomSource& rng);

}  // namespace rr
