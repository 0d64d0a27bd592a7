#pragma once

#include "mcnet/graph.hpp"
#include "mcnet/state.hpp"

#include <cstdint>
#include <random>

namespace mcnet {

// Portable seeded generator: std::mt19937_64 for raw bits, with the
// real-valued draws done here (53-bit mantissa) so that streams do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform in the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [lo, hi].
  Index integer(Index lo, Index hi) {
    return lo + static_cast<Index>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 mix of (seed, stream), used to give every trial its own stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct Instance {
  WeightedGraph graph;
  ChainParams params;
};

struct RandomInstanceOptions {
  Index min_nodes = 2;
  Index max_nodes = 30;
  double edge_probability = 0.4;
  double weight_lo = 0.5, weight_hi = 2.0;
  double rate_lo = 0.2, rate_hi = 2.0;
  double coupling_lo = 0.0, coupling_hi = 2.0;
  bool connected = false;
};

// Erdos-Renyi graph with uniform weights; alpha, beta and the couplings are
// drawn uniformly from the configured ranges.
WeightedGraph random_graph(Rng& rng, Index n, const RandomInstanceOptions& options);
Instance random_instance(Rng& rng, const RandomInstanceOptions& options = {});

// Uniform point of the open cube.
Vector random_interior(Rng& rng, Index n);

}  // namespace mcnet
