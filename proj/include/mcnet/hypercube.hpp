#pragma once

#include "mcnet/state.hpp"

#include <cstdint>

namespace mcnet {

inline constexpr Index kMaxHypercubeNodes = 20;

// Product distribution on the 2^N corners of the cube. Corner sigma is an
// integer whose bit i is node i's state; bit 0 means |0> (factor p_i) and
// bit 1 means |1> (factor q_i).
struct HypercubeDistribution {
  Index nodes = 0;
  Vector probs;  // length 2^nodes

  double operator[](std::uint64_t sigma) const { return probs(static_cast<Index>(sigma)); }
};

// Throws DomainError when N exceeds kMaxHypercubeNodes.
HypercubeDistribution embed(const StateVector& p);

// Sum over corners with sigma_i = 0, i.e. the recovered p_i.
double marginal_zero(const HypercubeDistribution& dist, Index i);

// sum_sigma b_sigma log(b_sigma / a_sigma): divergence of the interior
// reference b from a. +inf if some a_sigma = 0.
double hypercube_relative_entropy(const HypercubeDistribution& a, const HypercubeDistribution& b);

// p_bar^k (1 - p_bar)^l for a corner with k |0> entries and l |1> entries.
double binomial_corner_probability(double p_bar, Index k, Index l, Index n);

}  // namespace mcnet
