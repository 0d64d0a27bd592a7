#include "mcnet/hypercube.hpp"

#include <cmath>
#include <limits>

namespace mcnet {

HypercubeDistribution embed(const StateVector& p) {
  const Index n = p.size();
  if (n > kMaxHypercubeNodes) {
    throw DomainError("embed: N = " + std::to_string(n) + " exceeds the limit of " +
                      std::to_string(kMaxHypercubeNodes) +
                      " nodes (2^N corners); verify embedding identities on a smaller graph");
  }
  require(n > 0, "embed: empty state");
  HypercubeDistribution d;
  d.nodes = n;
  d.probs.resize(Index{1} << n);
  // Build the product one node at a time: corners with bit i clear take p_i,
  // those with bit i set take q_i.
  d.probs(0) = 1.0;
  Index filled = 1;
  for (Index i = 0; i < n; ++i) {
    const double pi = p[i];
    const double qi = 1.0 - pi;
    for (Index s = 0; s < filled; ++s) {
      const double base = d.probs(s);
      d.probs(s) = base * pi;
      d.probs(s + filled) = base * qi;
    }
    filled *= 2;
  }
  return d;
}

double marginal_zero(const HypercubeDistribution& dist, Index i) {
  require(i >= 0 && i < dist.nodes, "marginal_zero: node index out of range");
  double sum = 0.0;
  for (Index s = 0; s < dist.probs.size(); ++s)
    if (((s >> i) & 1) == 0) sum += dist.probs(s);
  return sum;
}

double hypercube_relative_entropy(const HypercubeDistribution& a, const HypercubeDistribution& b) {
  require(a.nodes == b.nodes && a.probs.size() == b.probs.size(),
          "hypercube_relative_entropy: dimension mismatch");
  double sum = 0.0;
  for (Index s = 0; s < b.probs.size(); ++s) {
    const double bs = b.probs(s);
    require(bs > 0.0, "hypercube_relative_entropy: reference must be strictly positive");
    const double as = a.probs(s);
    if (as <= 0.0) return std::numeric_limits<double>::infinity();
    sum += bs * std::log(bs / as);
  }
  return sum;
}

double binomial_corner_probability(double p_bar, Index k, Index l, Index n) {
  require(k >= 0 && l >= 0 && k + l == n, "binomial_corner_probability: k + l must equal N");
  require(p_bar >= 0.0 && p_bar <= 1.0, "binomial_corner_probability: p_bar must lie in [0, 1]");
  return std::pow(p_bar, static_cast<double>(k)) * std::pow(1.0 - p_bar, static_cast<double>(l));
}

}  // namespace mcnet
