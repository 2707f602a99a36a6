#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rr/engine.hpp"
#include "rr/graph.hpp"

namespace rr {

// What a rejection erases. `restart` drops the whole active set and is exact
// by construction; the narrow policies keep more and are validated
// empirically against the enumeration oracle per instance.
enum class ColoringRejection { neighbors, neighbors2, restart };

struct ColoringParams {
  std::uint32_t k = 3;  // number of colors, >= 2; sampling needs k > max degree
  ColoringRejection rejection = ColoringRejection::neighbors;
  void validate() const;
};

// Uniform sampler over proper k-colorings. Inactive vertices are blank
// (color 0) and constrain nothing, so the conditional law on the active set is
// uniform over proper colorings of the induced subgraph. A proposal picks
// uniformly among the colors unused by active neighbors and is accepted with
// probability (k - a)/k, the site partition function against its a = 0 bound.
class ColoringSampler {
 public:
  struct State {
    std::vector<std::uint32_t> color;  // 0 = blank iff inactive, else 1..k
    std::vector<std::uint8_t> active;
    std::uint32_t n_active = 0;
    VertexId scan_hint = 0;
    std::vector<VertexId> scratch;
    std::vector<std::uint32_t> color_scratch;
  };

  ColoringSampler(const Graph& g, ColoringParams params);

  State init() const;
  bool is_complete(const State& s) const { return s.n_active == graph_->vertex_count(); }
  std::size_t active_count(const State& s) const { return s.n_active; }

  VertexId choose_site(const State& s, RandomSource&) const;
  StepOutcome step(State& s, VertexId v, RandomSource& rng) const;

  nlohmann::json encode_sample(const State& s) const;  // per-vertex 1..k array

  const Graph& graph() const { return *graph_; }
  const ColoringParams& params() const { return params_; }

 private:
  const Graph* graph_;
  ColoringParams params_;
};

// Documentation data for the runtime-guarantee regime: the provable bound is
// asymptotic in k relative to the fourth power of the degree with an
// unspecified constant, so no numeric cutoff exists; the report carries the
// formula, a flag for k at or below the always-extendable floor, and an
// optional measured drift.
struct ColoringRegimeNote {
  std::size_t delta = 0;
  std::uint32_t k = 0;
  std::string guarantee;       // "linear expected steps when k = Omega(delta^4); constant unspecified"
  bool below_extendable = false;  // k <= delta: proposals may have no legal color
  std::optional<double> measured_drift;
};

ColoringRegimeNote coloring_regime_note(std::size_t delta, std::uint32_t k,
                                        std::optional<double> measured_drift = std::nullopt);

}  // namespace rr
