#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"
#include "rr/graph.hpp"

namespace rr {

// Ground-truth distribution of a model on a small instance, produced by
// exhaustive enumeration. Keys are the canonical JSON dump of the sampler's
// own sample encoding, so empirical counts can be compared directly.
struct ExactDistribution {
  std::string model;
  std::string instance;
  std::map<std::string, double> probability;
  double normalizer = 0.0;  // Z before dividing through

  std::size_t support_size() const { return probability.size(); }
  nlohmann::json to_json() const;
};

// Enumeration guards; every function below fails fast past these.
inline constexpr std::size_t kMaxHardcoreVertices = 24;
inline constexpr std::size_t kMaxRcEdges = 24;
inline constexpr std::uint64_t kMaxConfigurations = std::uint64_t{1} << 24;

// Independent sets weighted by lambda^|S|. Keys: sorted occupied vertex list.
ExactDistribution enumerate_hardcore(const Graph& g, double lambda, bool parallel = true);

// q = 2: spins {-1,+1} with energy -sum of edge spin products (keys are
// per-vertex -1/+1 arrays). q >= 3: colors 1..q with energy counting
// concordant edges. Weight exp(-beta*J*H).
ExactDistribution enumerate_spin(const Graph& g, double beta, int j, std::uint32_t q,
                                 bool parallel = true);

// Edge subsets A weighted by p^|A| (1-p)^|E\A| q^(c(A)). Keys: occupied edges
// as sorted [u,v] pairs.
ExactDistribution enumerate_rc(const Graph& g, double p, double q, bool parallel = true);

// Uniform over proper k-colorings; support_size() is the coloring count.
// Errors if no proper coloring exists.
ExactDistribution enumerate_colorings(const Graph& g, std::uint32_t k, bool parallel = true);

// The random cluster law composed analytically with uniform component
// coloring, expressed in the spin encoding of enumerate_spin (q = 2 maps
// colors 1,2 to +1,-1). Equals the ferromagnetic spin law at p = 1-exp(-beta)
// (beta halved for the q = 2 spin-product convention).
ExactDistribution compose_rc_coloring(const Graph& g, double p, std::uint32_t q_colors);

}  // namespace rr
