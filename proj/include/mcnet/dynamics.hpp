#pragma once

#include "mcnet/graph.hpp"
#include "mcnet/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcnet {

// dp/dt written with the weight matrix:
//   F_i = -a_i p_i + b_i q_i - g01 p_i (W q)_i + g10 q_i (W p)_i
Vector vector_field_w(const WeightedGraph& g, const ChainParams& params, const StateVector& p);

// The same field through degrees and the Laplacian:
//   F_i = gh d_i p_i^2 - (a_i + b_i + gh d_i) p_i + b_i - gh p_i (Lp)_i - g10 (Lp)_i
Vector vector_field_laplacian(const LaplacianView& lv, const ChainParams& params,
                              const StateVector& p);
Vector vector_field_laplacian(const WeightedGraph& g, const ChainParams& params,
                              const StateVector& p);

// Analytic dF/dp.
Matrix jacobian(const WeightedGraph& g, const ChainParams& params, const StateVector& p);

// F(p)_i for p on the face p_i = 0 (returns b_i - g10 (Lp)_i) or p_i = 1
// (returns -a_i - g01 (Lp)_i). Throws DomainError if p_i is not exactly 0 or 1.
double boundary_inwardness(const WeightedGraph& g, const ChainParams& params,
                           const StateVector& p, Index i);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> residuals;   // ||F||_inf at each sample
  std::vector<double> entropies;   // empty unless a reference was supplied
  std::size_t clamp_events = 0;    // entries pulled back into [0, 1] after a step
  double max_excursion = 0.0;      // largest pre-clamp distance outside [0, 1]

  std::size_t size() const { return times.size(); }
  bool has_entropy() const { return !entropies.empty(); }
};

struct IntegrationOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  // Keep every k-th step (the first and last samples are always kept).
  std::size_t record_every = 1;
};

// Fixed-step classic RK4 from p0 to t_end; states are clamped into the cube
// after every step. Throws NumericalError naming the step on non-finite state.
Trajectory integrate(const WeightedGraph& g, const ChainParams& params, const StateVector& p0,
                     const IntegrationOptions& options,
                     const std::optional<StateVector>& reference = std::nullopt);

struct RelaxationOptions {
  double dt = 1e-3;
  double tol = 1e-10;
  double max_time = 1e4;
};

// Integrates until ||F||_inf < tol. Throws ConvergenceError (with the best
// state seen) if max_time is reached first.
SteadyState integrate_to_steady(const WeightedGraph& g, const ChainParams& params,
                                const StateVector& p0, const RelaxationOptions& options = {});

double residual_norm(const WeightedGraph& g, const ChainParams& params, const StateVector& p);

// Header "t,p_0,...,p_{N-1},residual[,entropy]", 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace mcnet
