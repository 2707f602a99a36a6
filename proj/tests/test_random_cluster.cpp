#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rr/batch.hpp"
#include "rr/oracle.hpp"
#include "rr/random_cluster.hpp"
#include "rr/stats.hpp"

using namespace rr;

TEST_CASE("parameter validation: q must exceed 1, p must be a probability") {
  const Graph g = Graph::make_path(2);
  CHECK_THROWS_AS(RandomClusterSampler(g, {.p = 0.5, .q = 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(RandomClusterSampler(g, {.p = 0.5, .q = 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RandomClusterSampler(g, {.p = 1.2, .q = 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(RandomClusterSampler(g, {.p = -0.1, .q = 2.0}), std::invalid_argument);
}

TEST_CASE("threshold formulas and the worked Delta=4, q=2 case") {
  CHECK(rc_threshold(4, 2.0, true) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(rc_threshold(4, 2.0, false) == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK(rc_threshold(2, 2.0, false) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(rc_threshold(1, 2.0, true), std::invalid_argument);
  CHECK_THROWS_AS(rc_threshold(4, 1.0, true), std::invalid_argument);

  // The discriminant is the perfect square (delta - 2 + 1/q)^2, so the root
  // collapses to 1/(delta - 1).
  for (std::size_t delta : {2, 3, 4, 6, 9})
    for (double q : {1.2, 1.5, 2.0, 3.0, 10.0})
      CHECK(rc_threshold(delta, q, true) ==
            doctest::Approx(1.0 / static_cast<double>(delta - 1)).epsilon(1e-10));
}

TEST_CASE("potential coefficient") {
  const Graph grid = Graph::make_grid2d(3, 3);  // Delta = 4
  const RandomClusterSampler model(grid, {.p = 0.3, .q = 2.0});
  CHECK(model.potential_alpha() == doctest::Approx(2.0 * 0.85 / 0.7).epsilon(1e-12));

  const RandomClusterSampler cyc(Graph::make_cycle(4), {.p = 0.3, .q = 2.0});
  CHECK(cyc.potential_alpha() == doctest::Approx(0.0));

  const RandomClusterSampler deg(Graph::make_path(2), {.p = 1.0, .q = 2.0});
  CHECK_THROWS_AS(deg.potential_alpha(), std::invalid_argument);

  const Graph tri = Graph::make_complete(3);
  const RandomClusterSampler tmodel(tri, {.p = 0.3, .q = 2.0});
  const auto st = tmodel.init();
  CHECK(tmodel.potential(st) == doctest::Approx(-3.0 * tmodel.potential_alpha()).epsilon(1e-12));
}

TEST_CASE("single edge: occupation probability 1/3 at p=0.5, q=2, with and without the tree") {
  const Graph g = Graph::make_path(2);
  const ExactDistribution oracle = enumerate_rc(g, 0.5, 2.0);
  for (const bool trick : {true, false}) {
    const RandomClusterSampler model(g, {.p = 0.5, .q = 2.0, .tree_trick = trick});
    const auto records = run_batch(model, 555, 100000, 0, default_threads());
    std::uint64_t occupied = 0;
    for (const RunRecord& r : records) occupied += r.sample.size();
    CHECK(static_cast<double>(occupied) / 100000.0 == doctest::Approx(1.0 / 3.0).epsilon(0.02));
    CHECK(goodness_of_fit(oracle, count_samples(records), 0.01, 1e-3).pass);
  }
}

TEST_CASE("an attempt between already-connected endpoints always enters the edge set") {
  const Graph tri = Graph::make_complete(3);  // edges: 0={0,1} 1={0,2} 2={1,2}
  const RandomClusterSampler model(tri, {.p = 0.4, .q = 2.0});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto st = model.init();
    st.in_set[0] = st.in_set[2] = 1;
    st.n_in_set = 2;
    st.occupied.set_active(0, true);
    st.occupied.set_active(2, true);
    st.scan_hint = 1;
    RandomSource rng(seed);
    const StepOutcome out = model.step(st, 1, rng);  // 0 and 2 joined through 1
    CHECK(out.kind == StepKind::accepted);
    CHECK(st.n_in_set == 3);
  }
}

TEST_CASE("triangle exactness: empty-set mass 2/7 at p=0.5, q=2") {
  const Graph tri = Graph::make_complete(3);
  const ExactDistribution oracle = enumerate_rc(tri, 0.5, 2.0);
  for (const bool trick : {true, false}) {
    const RandomClusterSampler model(tri, {.p = 0.5, .q = 2.0, .tree_trick = trick});
    const auto counts = count_samples(run_batch(model, 717, 100000, 0, default_threads()));
    CHECK(static_cast<double>(counts.at("[]")) / 100000.0 ==
          doctest::Approx(2.0 / 7.0).epsilon(0.03));
    CHECK(goodness_of_fit(oracle, counts, 0.01, 1e-3).pass);
  }
}

TEST_CASE("rejection bookkeeping: removal bound and exact tree restoration") {
  const Graph grid = Graph::make_grid2d(3, 3);
  const std::size_t delta = grid.max_degree();
  const RandomClusterSampler model(grid, {.p = 0.6, .q = 3.0, .tree_trick = true});
  std::uint64_t rejections = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto st = model.init();
    RandomSource rng(seed);
    while (!model.is_complete(st)) {
      const EdgeId e = model.choose_site(st, rng);
      const StepOutcome out = model.step(st, e, rng);
      if (out.kind != StepKind::rejected) continue;
      ++rejections;
      const std::size_t m = out.removed_component_size;
      CHECK(out.removed.size() <= m * (delta - 1) + 1);
      CHECK(out.restored.size() == m);  // spanning tree has exactly M edges
      // The restored edges span the removed component plus the attempt's tail.
      UnionFind uf(grid.vertex_count());
      std::size_t united = 0;
      for (EdgeId te : out.restored) united += uf.unite(grid.edge(te).u, grid.edge(te).v) ? 1 : 0;
      CHECK(united == m);  // acyclic and connected over m+1 vertices
      // A_t stays inside E_t.
      for (EdgeId ee = 0; ee < grid.edge_count(); ++ee)
        if (st.occupied.is_active(ee)) CHECK(st.in_set[ee]);
    }
  }
  CHECK(rejections > 100);
}

TEST_CASE("exactness across parameters on P3 and the 2x2 grid, tree on and off") {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.2, 1.5}, {0.5, 2.0}}) {
    for (const bool trick : {true, false}) {
      for (const Graph& g : {Graph::make_path(3), Graph::make_grid2d(2, 2)}) {
        const ExactDistribution oracle = enumerate_rc(g, p, q);
        const RandomClusterSampler model(g, {.p = p, .q = q, .tree_trick = trick});
        const auto counts = count_samples(run_batch(model, 999, 60000, 0, default_threads()));
        const GofReport rep = goodness_of_fit(
            oracle, counts, std::max(0.012, tv_noise_mean(oracle, 60000) * 1.8), 1e-3);
        CHECK(rep.pass);
      }
    }
  }
}

TEST_CASE("degenerate p: zero gives the empty configuration, one fills every edge") {
  const Graph g = Graph::make_complete(3);
  const RandomClusterSampler empty(g, {.p = 0.0, .q = 2.0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RunRecord rec = run(empty, seed);
    CHECK(rec.completed);
    CHECK(rec.iterations == g.edge_count());  // every proposal is 0 and accepted
    CHECK(rec.sample.empty());
  }
  const RandomClusterSampler full(g, {.p = 1.0, .q = 2.0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RunRecord rec = run(full, seed);
    CHECK(rec.completed);
    CHECK(rec.sample.size() == g.edge_count());
  }
}

TEST_CASE("drift of the edge potential under the guaranteed regime") {
  const Graph grid = Graph::make_grid2d(4, 4);  // Delta = 4
  const double p = 0.3, q = 2.0;
  REQUIRE(p < rc_threshold(4, q, true));
  const RandomClusterSampler model(grid, {.p = p, .q = q, .tree_trick = true});
  const double alpha = model.potential_alpha();
  const double bound = (1.0 - p) + p * ((1.0 / q) * (1.0 - alpha) + (1.0 - 1.0 / q) * (-alpha));
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t steps = 0;
  for (std::uint64_t seed = 0; seed < 400 && steps < 25000; ++seed) {
    auto st = model.init();
    RandomSource rng(seed);
    double prev = model.potential(st);
    while (!model.is_complete(st)) {
      model.step(st, model.choose_site(st, rng), rng);
      const double phi = model.potential(st);
      const double d = phi - prev;
      prev = phi;
      sum += d;
      sumsq += d * d;
      ++steps;
    }
  }
  const double mean = sum / static_cast<double>(steps);
  const double se = std::sqrt(sumsq / static_cast<double>(steps) - mean * mean) /
                    std::sqrt(static_cast<double>(steps));
  CHECK(mean >= bound - 3.0 * se);
}

TEST_CASE("rc_to_potts: monochromatic on a connected configuration, iid uniform on empty") {
  const Graph tri = Graph::make_complete(3);
  RandomSource rng(808);
  std::map<std::uint32_t, int> mono;
  const std::vector<std::uint8_t> all(3, 1);
  for (int i = 0; i < 30000; ++i) {
    const auto coloring = rc_to_potts(tri, all, 2, rng);
    CHECK(coloring[0] == coloring[1]);
    CHECK(coloring[1] == coloring[2]);
    ++mono[coloring[0]];
  }
  CHECK(static_cast<double>(mono[1]) / 30000.0 == doctest::Approx(0.5).epsilon(0.03));

  const std::vector<std::uint8_t> none(3, 0);
  std::map<std::string, int> iid;
  for (int i = 0; i < 40000; ++i) {
    const auto coloring = rc_to_potts(tri, none, 2, rng);
    ++iid[std::to_string(coloring[0]) + std::to_string(coloring[1]) + std::to_string(coloring[2])];
  }
  CHECK(iid.size() == 8);
  for (const auto& [k, c] : iid)
    CHECK(static_cast<double>(c) / 40000.0 == doctest::Approx(0.125).epsilon(0.1));

  CHECK_THROWS_AS(rc_to_potts(tri, none, 1, rng), std::invalid_argument);
}

TEST_CASE("interruptibility on the triangle") {
  const Graph tri = Graph::make_complete(3);
  const RandomClusterSampler model(tri, {.p = 0.5, .q = 2.0});
  std::vector<std::pair<std::uint64_t, std::int64_t>> records;
  for (int i = 0; i < 10000; ++i) {
    const RunRecord rec = run(model, replication_seed(66, static_cast<std::uint64_t>(i)));
    records.emplace_back(rec.iterations, static_cast<std::int64_t>(rec.sample.size()));
  }
  CHECK(independence_test(records, 1e-3).pass);
}
