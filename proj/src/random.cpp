#include "mcnet/random.hpp"

namespace mcnet {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WeightedGraph random_graph(Rng& rng, Index n, const RandomInstanceOptions& options) {
  for (int attempt = 0;; ++attempt) {
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (rng.bernoulli(options.edge_probability)) {
          w(i, j) = w(j, i) = rng.uniform(options.weight_lo, options.weight_hi);
        }
      }
    }
    WeightedGraph g(std::move(w));
    if (!options.connected || is_connected(g)) return g;
    if (attempt > 10000) throw NumericalError("random_graph: could not draw a connected graph");
  }
}

Instance random_instance(Rng& rng, const RandomInstanceOptions& options) {
  const Index n = rng.integer(options.min_nodes, options.max_nodes);
  WeightedGraph g = random_graph(rng, n, options);
  ChainParams params;
  params.alpha.resize(n);
  params.beta.resize(n);
  for (Index i = 0; i < n; ++i) params.alpha(i) = rng.uniform(options.rate_lo, options.rate_hi);
  for (Index i = 0; i < n; ++i) params.beta(i) = rng.uniform(options.rate_lo, options.rate_hi);
  params.gamma01 = rng.uniform(options.coupling_lo, options.coupling_hi);
  params.gamma10 = rng.uniform(options.coupling_lo, options.coupling_hi);
  return Instance{std::move(g), std::move(params)};
}

Vector random_interior(Rng& rng, Index n) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = rng.uniform();
  return x;
}

}  // namespace mcnet
