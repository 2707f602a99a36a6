#include "rr/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rr {

namespace {

struct WeightedConfig {
  std::uint64_t rank;
  long double weight;
};

// Enumerate configuration ranks [0, total) in fixed-size chunks. Chunks may be
// processed concurrently, but partial sums and entry lists are combined in
// chunk-index order, so the result (including every floating-point rounding)
// is identical with and without threads. Kahan accumulation keeps the
// normalizer error well below the oracle's 1e-12 budget.
template <typename WeightFn>
std::pair<std::vector<WeightedConfig>, long double> enumerate_weights(std::uint64_t total,
                                                                      WeightFn&& weight_of,
                                                                      bool parallel) {
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<WeightedConfig>> chunk_entries(chunks);
  std::vector<long double> chunk_sum(chunks, 0.0L);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && chunks > 1)
#endif
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(chunks); ++ci) {
    const std::uint64_t begin = static_cast<std::uint64_t>(ci) * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    long double sum = 0.0L, comp = 0.0L;
    auto& entries = chunk_entries[ci];
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      const long double w = weight_of(rank);
      if (w <= 0.0L) continue;
      entries.push_back({rank, w});
      const long double y = w - comp;
      const long double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    chunk_sum[ci] = sum;
  }
  (void)parallel;

  long double z = 0.0L, comp = 0.0L;
  std::vector<WeightedConfig> all;
  for (std::uint64_t ci = 0; ci < chunks; ++ci) {
    const long double y = chunk_sum[ci] - comp;
    const long double t = z + y;
    comp = (t - z) - y;
    z = t;
    all.insert(all.end(), chunk_entries[ci].begin(), chunk_entries[ci].end());
  }
  return {std::move(all), z};
}

void guard_configurations(std::uint64_t total, const std::string& what) {
  if (total == 0 || total > kMaxConfigurations)
    throw std::invalid_argument(what + ": configuration space too large to enumerate (limit 2^24)");
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, const std::string& what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (total > kMaxConfigurations / base + 1)
      throw std::invalid_argument(what + ": configuration space too large to enumerate (limit 2^24)");
    total *= base;
  }
  return total;
}

std::string describe(const Graph& g) {
  return "n=" + std::to_string(g.vertex_count()) + ",m=" + std::to_string(g.edge_count());
}

}  // namespace

nlohmann::json ExactDistribution::to_json() const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, p] : probability) entries[key] = p;
  return {{"model", model},
          {"instance", instance},
          {"support", probability.size()},
          {"normalizer", normalizer},
          {"probability", entries}};
}

ExactDistribution enumerate_hardcore(const Graph& g, double lambda, bool parallel) {
  if (!(lambda > 0.0)) throw std::invalid_argument("enumerate_hardcore: lambda must be > 0");
  const std::size_t n = g.vertex_count();
  if (n > kMaxHardcoreVertices)
    throw std::invalid_argument("enumerate_hardcore: more than 24 vertices");
  const std::uint64_t total = std::uint64_t{1} << n;

  std::vector<std::uint32_t> adj_mask(n, 0);
  for (const Edge& e : g.edges()) {
    adj_mask[e.u] |= std::uint32_t{1} << e.v;
    adj_mask[e.v] |= std::uint32_t{1} << e.u;
  }
  std::vector<long double> lambda_pow(n + 1, 1.0L);
  for (std::size_t k = 1; k <= n; ++k) lambda_pow[k] = lambda_pow[k - 1] * lambda;

  auto weight_of = [&](std::uint64_t rank) -> long double {
    const std::uint32_t set = static_cast<std::uint32_t>(rank);
    for (std::size_t v = 0; v < n; ++v)
      if ((set >> v) & 1u)
        if (adj_mask[v] & set) return 0.0L;
    return lambda_pow[static_cast<std::size_t>(__builtin_popcount(set))];
  };
  auto [entries, z] = enumerate_weights(total, weight_of, parallel);

  ExactDistribution dist;
  dist.model = "hardcore";
  dist.instance = describe(g) + ",lambda=" + std::to_string(lambda);
  dist.normalizer = static_cast<double>(z);
  for (const auto& wc : entries) {
    nlohmann::json key = nlohmann::json::array();
    for (std::size_t v = 0; v < n; ++v)
      if ((wc.rank >> v) & 1u) key.push_back(v);
    dist.probability[key.dump()] = static_cast<double>(wc.weight / z);
  }
  return dist;
}

ExactDistribution enumerate_spin(const Graph& g, double beta, int j, std::uint32_t q,
                                 bool parallel) {
  if (q < 2) throw std::invalid_argument("enumerate_spin: q must be >= 2");
  if (j != 1 && j != -1) throw std::invalid_argument("enumerate_spin: j must be +1 or -1");
  const std::size_t n = g.vertex_count();
  const std::uint64_t total = checked_pow(q, n, "enumerate_spin");
  guard_configurations(total, "enumerate_spin");
  const double bj = beta * static_cast<double>(j);

  auto weight_of = [&](std::uint64_t rank) -> long double {
    // digits of rank in base q are the vertex colors
    std::uint32_t color[kMaxHardcoreVertices * 2];
    std::uint64_t r = rank;
    for (std::size_t v = 0; v < n; ++v) {
      color[v] = static_cast<std::uint32_t>(r % q);
      r /= q;
    }
    long long energy = 0;  // -H
    if (q == 2) {
      for (const Edge& e : g.edges())
        energy += (color[e.u] == color[e.v]) ? 1 : -1;  // spin product
    } else {
      for (const Edge& e : g.edges())
        energy += (color[e.u] == color[e.v]) ? 1 : 0;  // concordance count
    }
    return std::exp(static_cast<long double>(bj) * static_cast<long double>(energy));
  };
  auto [entries, z] = enumerate_weights(total, weight_of, parallel);

  ExactDistribution dist;
  dist.model = q == 2 ? "ising" : "potts";
  dist.instance = describe(g) + ",beta=" + std::to_string(beta) + ",j=" + std::to_string(j) +
                  ",q=" + std::to_string(q);
  dist.normalizer = static_cast<double>(z);
  for (const auto& wc : entries) {
    nlohmann::json key = nlohmann::json::array();
    std::uint64_t r = wc.rank;
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t digit = static_cast<std::uint32_t>(r % q);
      r /= q;
      if (q == 2)
        key.push_back(digit == 0 ? -1 : 1);
      else
        key.push_back(digit + 1);
    }
    dist.probability[key.dump()] = static_cast<double>(wc.weight / z);
  }
  return dist;
}

ExactDistribution enumerate_rc(const Graph& g, double p, double q, bool parallel) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("enumerate_rc: p must be in [0,1]");
  if (!(q > 0.0)) throw std::invalid_argument("enumerate_rc: q must be > 0");
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();
  if (m > kMaxRcEdges) throw std::invalid_argument("enumerate_rc: more than 24 edges");
  const std::uint64_t total = std::uint64_t{1} << m;

  std::vector<long double> edge_pow(m + 1);  // p^a (1-p)^(m-a)
  for (std::size_t a = 0; a <= m; ++a)
    edge_pow[a] = std::pow(static_cast<long double>(p), static_cast<long double>(a)) *
                  std::pow(static_cast<long double>(1.0 - p), static_cast<long double>(m - a));
  std::vector<long double> q_pow(n + 1, 1.0L);
  for (std::size_t c = 1; c <= n; ++c) q_pow[c] = q_pow[c - 1] * static_cast<long double>(q);

  auto weight_of = [&](std::uint64_t rank) -> long double {
    UnionFind uf(n);
    std::size_t components = n;
    std::size_t occupied = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (!((rank >> e) & 1u)) continue;
      ++occupied;
      if (uf.unite(g.edge(static_cast<EdgeId>(e)).u, g.edge(static_cast<EdgeId>(e)).v))
        --components;
    }
    return edge_pow[occupied] * q_pow[components];
  };
  auto [entries, z] = enumerate_weights(total, weight_of, parallel);

  ExactDistribution dist;
  dist.model = "rc";
  dist.instance = describe(g) + ",p=" + std::to_string(p) + ",q=" + std::to_string(q);
  dist.normalizer = static_cast<double>(z);
  for (const auto& wc : entries) {
    nlohmann::json key = nlohmann::json::array();
    for (std::size_t e = 0; e < m; ++e)
      if ((wc.rank >> e) & 1u)
        key.push_back(nlohmann::json::array(
            {g.edge(static_cast<EdgeId>(e)).u, g.edge(static_cast<EdgeId>(e)).v}));
    dist.probability[key.dump()] = static_cast<double>(wc.weight / z);
  }
  return dist;
}

ExactDistribution enumerate_colorings(const Graph& g, std::uint32_t k, bool parallel) {
  if (k < 1) throw std::invalid_argument("enumerate_colorings: k must be >= 1");
  const std::size_t n = g.vertex_count();
  const std::uint64_t total = checked_pow(k, n, "enumerate_colorings");
  guard_configurations(total, "enumerate_colorings");

  auto weight_of = [&](std::uint64_t rank) -> long double {
    std::uint32_t color[kMaxHardcoreVertices * 2];
    std::uint64_t r = rank;
    for (std::size_t v = 0; v < n; ++v) {
      color[v] = static_cast<std::uint32_t>(r % k);
      r /= k;
    }
    for (const Edge& e : g.edges())
      if (color[e.u] == color[e.v]) return 0.0L;
    return 1.0L;
  };
  auto [entries, z] = enumerate_weights(total, weight_of, parallel);
  if (entries.empty())
    throw std::invalid_argument("enumerate_colorings: no proper coloring with k=" +
                                std::to_string(k));

  ExactDistribution dist;
  dist.model = "coloring";
  dist.instance = describe(g) + ",k=" + std::to_string(k);
  dist.normalizer = static_cast<double>(z);
  for (const auto& wc : entries) {
    nlohmann::json key = nlohmann::json::array();
    std::uint64_t r = wc.rank;
    for (std::size_t v = 0; v < n; ++v) {
      key.push_back(static_cast<std::uint32_t>(r % k) + 1);
      r /= k;
    }
    dist.probability[key.dump()] = static_cast<double>(wc.weight / z);
  }
  return dist;
}

ExactDistribution compose_rc_coloring(const Graph& g, double p, std::uint32_t q_colors) {
  if (q_colors < 2) throw std::invalid_argument("compose_rc_coloring: q must be an integer >= 2");
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();
  if (m > 16 || checked_pow(q_colors, n, "compose_rc_coloring") > (std::uint64_t{1} << 20))
    throw std::invalid_argument("compose_rc_coloring: instance too large");

  // Summing p^|A| (1-p)^|E\A| over each of the q^c(A) compatible colorings of
  // every edge subset reproduces the coupled vertex law; the q^c(A) factor is
  // exactly the count of compatible colorings.
  std::map<std::string, long double> acc;
  long double z = 0.0L;
  const double q = static_cast<double>(q_colors);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    UnionFind uf(n);
    std::size_t occupied = 0;
    for (std::size_t e = 0; e < m; ++e)
      if ((subset >> e) & 1u) {
        ++occupied;
        uf.unite(g.edge(static_cast<EdgeId>(e)).u, g.edge(static_cast<EdgeId>(e)).v);
      }
    std::vector<std::uint32_t> roots;
    std::vector<std::int32_t> root_index(n, -1);
    for (VertexId v = 0; v < n; ++v) {
      const std::uint32_t r = uf.find(v);
      if (root_index[r] < 0) {
        root_index[r] = static_cast<std::int32_t>(roots.size());
        roots.push_back(r);
      }
    }
    const std::size_t c = roots.size();
    const long double edge_weight =
        std::pow(static_cast<long double>(p), static_cast<long double>(occupied)) *
        std::pow(static_cast<long double>(1.0 - p), static_cast<long double>(m - occupied));
    z += edge_weight * std::pow(static_cast<long double>(q), static_cast<long double>(c));

    std::vector<std::uint32_t> assign(c, 0);
    for (;;) {
      nlohmann::json key = nlohmann::json::array();
      for (VertexId v = 0; v < n; ++v) {
        const std::uint32_t color = assign[root_index[uf.find(v)]];
        if (q_colors == 2)
          key.push_back(color == 0 ? 1 : -1);
        else
          key.push_back(color + 1);
      }
      acc[key.dump()] += edge_weight;
      std::size_t i = 0;
      while (i < c && ++assign[i] == q_colors) assign[i++] = 0;
      if (i == c) break;
    }
  }

  ExactDistribution dist;
  dist.model = q_colors == 2 ? "ising" : "potts";
  dist.instance = describe(g) + ",rc-coupled,p=" + std::to_string(p) +
                  ",q=" + std::to_string(q_colors);
  dist.normalizer = static_cast<double>(z);
  for (const auto& [key, w] : acc) dist.probability[key] = static_cast<double>(w / z);
  return dist;
}

}  // namespace rr
