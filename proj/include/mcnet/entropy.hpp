#pragma once

#include "mcnet/graph.hpp"
#include "mcnet/state.hpp"

namespace mcnet {

// Sum over nodes of the Kullback-Leibler divergence of the two-point
// distribution (p_bar_i, q_bar_i) from (p_i, q_i), in nats. Returns +inf when
// some p_i is exactly 0 or 1. p_bar must be strictly interior.
double relative_entropy(const StateVector& p, const StateVector& p_bar);

// Scalar single-node version of relative_entropy.
double relative_entropy(double p, double p_bar);

// dE/dt = sum_i (q_bar_i / q_i - p_bar_i / p_i) F(p)_i for interior p.
double entropy_rate(const WeightedGraph& g, const ChainParams& params, const StateVector& p,
                    const StateVector& p_bar);
double entropy_rate(const WeightedGraph& g, const ChainParams& params, const StateVector& p,
                    const SteadyState& steady);

struct DescentMargin {
  double alpha_term = 0.0;  // sum_i a_i (q_bar_i - q_i)^2 / (q_bar_i q_i)
  double beta_term = 0.0;   // sum_i b_i (p_i - p_bar_i)^2 / (p_bar_i p_i)

  // Upper bound on the entropy rate.
  double bound() const { return -alpha_term - beta_term; }
};

DescentMargin descent_margin(const ChainParams& params, const StateVector& p,
                             const StateVector& p_bar);

struct EntropyReport {
  double value = 0.0;
  double rate = 0.0;
  DescentMargin margin;
  // Some p_i lies within 1e-12 of {0, 1}.
  bool near_boundary = false;
};

inline constexpr double kNearBoundary = 1e-12;

EntropyReport entropy_report(const WeightedGraph& g, const ChainParams& params,
                             const StateVector& p, const SteadyState& steady);

// sum_i [ (y_i / x_i)(Lx)_i + (x_i / y_i)(Ly)_i ], nonpositive on (0, 1)^N.
double lemma31_quantity(const LaplacianView& lv, const Vector& x, const Vector& y);

// sum_ij x_i / (1 - x_i) L_ij x_j, nonnegative on (0, 1)^N.
double lemma42_quantity(const LaplacianView& lv, const Vector& x);

}  // namespace mcnet
