#pragma once

#include <chrono>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "rr/random.hpp"

namespace rr {

enum class StepKind { accepted, rejected };

// Result of one attempt to grow the active site set. `site` is the vertex (or
// edge id, for edge-indexed models) that was attempted. On rejection,
// `removed` lists the previously active sites taken back out, and for the
// random cluster model `restored` lists the tree edges re-added by the
// add-back step (the attempted edge itself re-enters through that tree).
struct StepOutcome {
  StepKind kind = StepKind::accepted;
  std::uint32_t site = 0;
  std::vector<std::uint32_t> removed;
  std::vector<std::uint32_t> restored;
  std::uint32_t removed_component_size = 0;
};

struct RunRecord {
  nlohmann::json sample;  // null when the run was interrupted
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t wall_ns = 0;
  bool completed = false;
};

// JSON-lines form. wall_ns is optional because wall time is the one
// nondeterministic field; everything else is a pure function of the seed.
inline nlohmann::json run_record_json(const RunRecord& r, bool with_wall_ns) {
  nlohmann::json j{{"sample", r.sample},
                   {"iterations", r.iterations},
                   {"seed", r.seed},
                   {"completed", r.completed}};
  if (with_wall_ns) j["wall_ns"] = r.wall_ns;
  return j;
}

template <typename M>
concept SamplerModel = requires(const M m, typename M::State st, RandomSource rng) {
  { m.init() } -> std::same_as<typename M::State>;
  { m.is_complete(st) } -> std::convertible_to<bool>;
  { m.choose_site(st, rng) } -> std::convertible_to<std::uint32_t>;
  { m.step(st, std::uint32_t{}, rng) } -> std::same_as<StepOutcome>;
  { m.active_count(st) } -> std::convertible_to<std::size_t>;
  { m.encode_sample(st) } -> std::same_as<nlohmann::json>;
};

// Acceptance probability rho/M for a proposed transition, with M an upper
// bound on rho over configurations. A ratio above its bound means the model's
// bound computation is wrong; a nonpositive ratio means the proposal had zero
// probability under the target.
inline double heat_bath_acceptance(double rho_value, double m_value) {
  if (!(rho_value > 0.0))
    throw std::invalid_argument("heat_bath_acceptance: rho must be positive");
  if (rho_value > m_value)
    throw std::logic_error("heat_bath_acceptance: rho exceeds its maximum M");
  return rho_value / m_value;
}

struct TraceRecord {
  std::uint64_t t = 0;
  std::size_t active_size = 0;
  StepKind kind = StepKind::accepted;
};

// Repeat loop: grow until every site is active, or until `cap` iterations
// (cap = 0 means unbounded). An interrupted run yields no sample at all; a
// partial configuration is not a draw from the target, so it is discarded.
// `on_step(state, outcome, t)` observes each iteration and must not draw.
template <SamplerModel M, typename OnStep>
RunRecord run_traced(const M& model, std::uint64_t seed, std::uint64_t cap, OnStep&& on_step) {
  const auto t0 = std::chrono::steady_clock::now();
  RandomSource rng(seed);
  typename M::State state = model.init();
  RunRecord rec;
  rec.seed = seed;
  std::uint64_t t = 0;
  bool complete = model.is_complete(state);
  while (!complete) {
    if (cap != 0 && t >= cap) break;
    const std::uint32_t site = model.choose_site(state, rng);
    StepOutcome out = model.step(state, site, rng);
    ++t;
    on_step(state, out, t);
    complete = model.is_complete(state);
  }
  rec.iterations = t;
  rec.completed = complete;
  rec.sample = complete ? model.encode_sample(state) : nlohmann::json{};
  rec.wall_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
          .count());
  return rec;
}

template <SamplerModel M>
RunRecord run(const M& model, std::uint64_t seed, std::uint64_t cap = 0) {
  return run_traced(model, seed, cap,
                    [](const typename M::State&, const StepOutcome&, std::uint64_t) {});
}

// Per-iteration (t, |active set|, outcome kind) stream for drift and
// potential-function measurements.
template <SamplerModel M>
RunRecord record_trace(const M& model, std::uint64_t seed, std::uint64_t cap,
                       std::vector<TraceRecord>& trace) {
  return run_traced(model, seed, cap,
                    [&](const typename M::State& st, const StepOutcome& out, std::uint64_t t) {
                      trace.push_back({t, model.active_count(st), out.kind});
                    });
}

}  // namespace rr
