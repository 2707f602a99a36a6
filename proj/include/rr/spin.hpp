#pragma once

#include <cstdint>
#include <vector>

#include "rr/engine.hpp"
#include "rr/graph.hpp"

namespace rr {

enum class RejectionRadius {
  neighbors,   // take back the active neighbors of the attempted vertex
  neighbors2,  // take back the active vertices within distance two
};

struct IsingParams {
  double beta = 0.1;  // literal coefficient in exp{-beta*J*H(x)}
  int j = +1;         // +1 ferromagnetic, -1 antiferromagnetic
  RejectionRadius rejection = RejectionRadius::neighbors;
  void validate() const;
};

struct PottsParams {
  double beta = 0.1;
  int j = +1;
  std::uint32_t q = 3;  // number of colors
  RejectionRadius rejection = RejectionRadius::neighbors;
  void validate() const;
};

// Local field of an inactive vertex: d = number of active neighbors, s = sum
// of their spins. Inactive vertices carry the sentinel spin 0 and contribute
// nothing, so only the active neighborhood enters.
struct LocalField {
  std::uint32_t d = 0;
  std::int32_t s = 0;
};

// Heat-bath sampler for the Ising model on {-1,+1} spins with energy
// H(x) = -sum over edges of x(u)x(v). Inactive vertices hold a third color 0
// that no edge term sees; the first vertex activated in a component is a fair
// coin, exactly the singleton marginal.
class IsingSampler {
 public:
  struct State {
    std::vector<std::int8_t> spin;  // -1/0/+1; 0 iff inactive
    std::vector<std::uint8_t> active;
    std::uint32_t n_active = 0;
    VertexId scan_hint = 0;
    std::vector<VertexId> scratch;
  };

  IsingSampler(const Graph& g, IsingParams params);

  State init() const;
  bool is_complete(const State& s) const { return s.n_active == graph_->vertex_count(); }
  std::size_t active_count(const State& s) const { return s.n_active; }

  LocalField local_field(const State& s, VertexId v) const;
  // cosh(beta*s)/cosh(beta*d): the heat-bath ratio against its maximum over
  // neighbor spin assignments (|s| = d). Even in s, so both signs of J share it.
  double acceptance_probability(std::uint32_t d, std::int32_t s) const;

  VertexId choose_site(const State& s, RandomSource&) const;
  StepOutcome step(State& s, VertexId v, RandomSource& rng) const;

  nlohmann::json encode_sample(const State& s) const;  // per-vertex -1/+1 array

  const Graph& graph() const { return *graph_; }
  const IsingParams& params() const { return params_; }

 private:
  const Graph* graph_;
  IsingParams params_;
};

// Potts generalization: colors 1..q, edge energy counts concordant endpoints,
// heat-bath weight exp(beta*J*m_c) for the count m_c of active neighbors
// already colored c. q = 2 reproduces the Ising machinery at half the beta
// (concordance indicators versus spin products).
class PottsSampler {
 public:
  struct State {
    std::vector<std::uint32_t> color;  // 0 iff inactive, else 1..q
    std::vector<std::uint8_t> active;
    std::uint32_t n_active = 0;
    VertexId scan_hint = 0;
    std::vector<VertexId> scratch;
  };

  PottsSampler(const Graph& g, PottsParams params);

  State init() const;
  bool is_complete(const State& s) const { return s.n_active == graph_->vertex_count(); }
  std::size_t active_count(const State& s) const { return s.n_active; }

  // Z_v(x) / max Z_v, where Z_v = sum over colors of exp(beta*J*m_c) and the
  // maximum sits at a fully concordant neighborhood.
  double acceptance_probability(const State& s, VertexId v) const;

  VertexId choose_site(const State& s, RandomSource&) const;
  StepOutcome step(State& s, VertexId v, RandomSource& rng) const;

  nlohmann::json encode_sample(const State& s) const;  // per-vertex 1..q array

  const Graph& graph() const { return *graph_; }
  const PottsParams& params() const { return params_; }

 private:
  double site_weight_sum(const State& s, VertexId v, std::vector<double>& weights) const;

  const Graph* graph_;
  PottsParams params_;
};

// beta_max = ln(1 + 1/delta)/delta: the drift bound below changes sign here.
double ising_threshold(std::size_t delta);
// (delta+1)*exp(-beta*delta) - delta.
double ising_drift_bound(std::size_t delta, double beta);

namespace detail {
// Lowest-numbered inactive vertex; shared fixed visit order for vertex models.
template <typename StateT>
VertexId lowest_inactive(const StateT& s) {
  VertexId v = s.scan_hint;
  while (s.active[v]) ++v;
  return v;
}
// Collect the active vertices within the configured rejection radius of v.
void collect_rejection_set(const Graph& g, const std::vector<std::uint8_t>& active, VertexId v,
                           RejectionRadius radius, std::vector<VertexId>& out);
}  // namespace detail

}  // namespace rr
