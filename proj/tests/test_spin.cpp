#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rr/batch.hpp"
#include "rr/oracle.hpp"
#include "rr/spin.hpp"
#include "rr/stats.hpp"

using namespace rr;

TEST_CASE("parameter validation") {
  const Graph g = Graph::make_path(2);
  CHECK_THROWS_AS(IsingSampler(g, {.beta = -0.1, .j = 1}), std::invalid_argument);
  CHECK_THROWS_AS(IsingSampler(g, {.beta = 0.1, .j = 0}), std::invalid_argument);
  CHECK_THROWS_AS(PottsSampler(g, {.beta = 0.1, .j = 1, .q = 1}), std::invalid_argument);
}

TEST_CASE("threshold and drift-bound formulas") {
  CHECK(ising_threshold(4) == doctest::Approx(0.25 * std::log(1.25)).epsilon(1e-12));
  CHECK(ising_threshold(4) == doctest::Approx(0.05579).epsilon(1e-3));
  CHECK(ising_threshold(1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(ising_threshold(2) == doctest::Approx(0.5 * std::log(1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(ising_threshold(0), std::invalid_argument);

  CHECK(ising_drift_bound(3, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ising_drift_bound(4, ising_threshold(4)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ising_drift_bound(2, 0.1) == doctest::Approx(3.0 * std::exp(-0.2) - 2.0).epsilon(1e-12));
}

TEST_CASE("local field counts only active neighbors") {
  const Graph g = Graph::make_path(3);
  const IsingSampler model(g, {.beta = 0.2, .j = 1});
  auto st = model.init();

  LocalField f = model.local_field(st, 1);
  CHECK(f.d == 0);
  CHECK(f.s == 0);

  st.active[0] = st.active[2] = 1;
  st.spin[0] = st.spin[2] = 1;
  st.n_active = 2;
  f = model.local_field(st, 1);
  CHECK(f.d == 2);
  CHECK(f.s == 2);

  st.spin[2] = -1;
  f = model.local_field(st, 1);
  CHECK(f.d == 2);
  CHECK(f.s == 0);
}

TEST_CASE("acceptance probability: cosh ratio with its exact endpoints") {
  const Graph g = Graph::make_path(3);
  const IsingSampler model(g, {.beta = 0.1, .j = 1});
  CHECK(model.acceptance_probability(0, 0) == doctest::Approx(1.0));
  CHECK(model.acceptance_probability(2, 2) == doctest::Approx(1.0));
  CHECK(model.acceptance_probability(2, -2) == doctest::Approx(1.0));
  CHECK(model.acceptance_probability(2, 0) ==
        doctest::Approx(1.0 / std::cosh(0.2)).epsilon(1e-12));
  CHECK(model.acceptance_probability(2, 0) == doctest::Approx(0.9803).epsilon(1e-4));
}

TEST_CASE("an unconditioned site is a fair coin and always accepts") {
  const Graph g = Graph::make_path(1);
  const IsingSampler model(g, {.beta = 0.7, .j = 1});
  std::uint64_t plus = 0;
  constexpr int kRuns = 40000;
  for (int i = 0; i < kRuns; ++i) {
    const RunRecord rec = run(model, replication_seed(3, static_cast<std::uint64_t>(i)));
    CHECK(rec.iterations == 1);
    plus += rec.sample[0].get<int>() == 1 ? 1 : 0;
  }
  CHECK(static_cast<double>(plus) / kRuns == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("potts with no active neighbors proposes uniformly and accepts") {
  const Graph g = Graph::make_path(1);
  const PottsSampler model(g, {.beta = 0.5, .j = 1, .q = 3});
  std::map<std::string, std::uint64_t> counts;
  constexpr int kRuns = 60000;
  for (int i = 0; i < kRuns; ++i) {
    const RunRecord rec = run(model, replication_seed(4, static_cast<std::uint64_t>(i)));
    CHECK(rec.iterations == 1);
    ++counts[rec.sample.dump()];
  }
  CHECK(counts.size() == 3);
  for (const auto& [k, c] : counts)
    CHECK(static_cast<double>(c) / kRuns == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("third color invariant and acceptance bounds along traced runs") {
  const Graph g = Graph::make_cycle(5);
  const IsingSampler model(g, {.beta = 0.3, .j = -1});
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    run_traced(model, seed, 0,
               [&](const IsingSampler::State& st, const StepOutcome&, std::uint64_t) {
                 for (VertexId v = 0; v < g.vertex_count(); ++v)
                   CHECK((st.spin[v] == 0) == (st.active[v] == 0));
               });
  }
  for (std::uint32_t d = 0; d <= 4; ++d)
    for (std::int32_t s = -static_cast<std::int32_t>(d); s <= static_cast<std::int32_t>(d);
         s += 2) {
      const double a = model.acceptance_probability(d, s);
      CHECK(a > 0.0);
      CHECK(a <= 1.0);
    }
}

TEST_CASE("ising exactness against the oracle where rejections occur (C4, both couplings)") {
  const Graph g = Graph::make_cycle(4);
  for (const int j : {+1, -1}) {
    const IsingSampler model(g, {.beta = 0.3, .j = j});
    const ExactDistribution oracle = enumerate_spin(g, 0.3, j, 2);
    const auto counts = count_samples(run_batch(model, 1900 + j, 100000, 0, default_threads()));
    const GofReport rep = goodness_of_fit(oracle, counts, 0.01, 1e-3);
    CHECK(rep.pass);
  }
}

TEST_CASE("potts q=3 exactness on P3") {
  const Graph g = Graph::make_path(3);
  const PottsSampler model(g, {.beta = 0.2, .j = 1, .q = 3});
  const ExactDistribution oracle = enumerate_spin(g, 0.2, +1, 3);
  const auto counts = count_samples(run_batch(model, 2100, 100000, 0, default_threads()));
  CHECK(goodness_of_fit(oracle, counts, 0.01, 1e-3).pass);
}

TEST_CASE("potts at q=2 is the ising machinery at half the coupling") {
  // Concordance energy counts [same]; the spin product is 2*[same]-1, so the
  // two parameterizations meet at beta_potts = 2*beta_ising.
  const Graph g = Graph::make_cycle(4);
  const double beta_ising = 0.25;
  const PottsSampler potts(g, {.beta = 2.0 * beta_ising, .j = 1, .q = 2});
  const ExactDistribution oracle = enumerate_spin(g, beta_ising, +1, 2);

  const auto records = run_batch(potts, 3111, 100000, 0, default_threads());
  std::map<std::string, std::uint64_t> counts;
  for (const RunRecord& r : records) {
    nlohmann::json mapped = nlohmann::json::array();
    for (const auto& c : r.sample) mapped.push_back(c.get<int>() == 1 ? 1 : -1);
    ++counts[mapped.dump()];
  }
  CHECK(goodness_of_fit(oracle, counts, 0.01, 1e-3).pass);
}

TEST_CASE("drift on cycles inside the guaranteed regime") {
  const Graph g = Graph::make_cycle(30);
  const double beta = 0.1;
  REQUIRE(beta < ising_threshold(2));
  const IsingSampler model(g, {.beta = beta, .j = 1});
  const double bound = ising_drift_bound(2, beta);
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t steps = 0;
  for (std::uint64_t seed = 0; seed < 1500 && steps < 40000; ++seed) {
    std::size_t prev = 0;
    run_traced(model, seed, 0,
               [&](const IsingSampler::State& st, const StepOutcome&, std::uint64_t) {
                 const double d = static_cast<double>(st.n_active) - static_cast<double>(prev);
                 prev = st.n_active;
                 sum += d;
                 sumsq += d * d;
                 ++steps;
               });
  }
  const double mean = sum / static_cast<double>(steps);
  const double se = std::sqrt(sumsq / static_cast<double>(steps) - mean * mean) /
                    std::sqrt(static_cast<double>(steps));
  CHECK(mean >= bound - 3.0 * se);
}
