#pragma once

#include "mcnet/dynamics.hpp"
#include "mcnet/graph.hpp"
#include "mcnet/state.hpp"

#include <optional>
#include <string>

namespace mcnet {

// Per-node quadratics R_i(x) = gh d_i x^2 - (a_i + b_i + gh d_i) x + b_i and
// their roots rho_i in (0, 1).
class QuadraticNodeModel {
 public:
  QuadraticNodeModel(const WeightedGraph& g, const ChainParams& params);

  Index size() const { return quad_.size(); }
  double quad(Index i) const { return quad_(i); }
  double lin(Index i) const { return lin_(i); }
  double constant(Index i) const { return const_(i); }
  const Vector& rho() const { return rho_; }

  double evaluate(Index i, double x) const { return (quad_(i) * x + lin_(i)) * x + const_(i); }

  // Root of R_i(x) = rhs in (0, 1). With a strict sign change on [0, 1] the
  // root is unique and found by bisection (cross-checked against the
  // quadratic formula). Without one, an interior root of the quadratic is
  // still accepted; when two exist the one nearest `hint` is taken. Throws
  // BracketError when no interior root exists.
  double solve(Index i, double rhs, std::optional<double> hint = std::nullopt) const;

 private:
  Vector quad_;
  Vector lin_;
  Vector const_;
  Vector rho_;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Free-function form of QuadraticNodeModel::solve for node i.
double solve_R(Index i, const ChainParams& params, const WeightedGraph& g, double rhs,
               std::optional<double> hint = std::nullopt);

struct IterateOptions {
  double tol = 1e-10;
  std::size_t max_iter = 500;
};

// Fixed-point sweep from p(0) = rho:
//   R_i(p(k+1)_i) = gh p(k)_i (L p(k))_i + g10 (L p(k))_i.
// Converged when ||p(k+1) - p(k)||_inf < tol and ||F||_inf < 10 tol.
// Throws ConvergenceError (carrying the last iterate) on bracket failure or
// when max_iter is exhausted; divergence is a legal outcome on strongly
// heterogeneous graphs.
SteadyState iterate_steady(const WeightedGraph& g, const ChainParams& params,
                           const IterateOptions& options = {});

struct NewtonOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100;
  std::optional<StateVector> p0;  // defaults to rho, nudged into the open cube
};

// Damped Newton on F(p) = 0 with the analytic Jacobian.
SteadyState newton_steady(const WeightedGraph& g, const ChainParams& params,
                          const NewtonOptions& options = {});

enum class SteadyMethod { ode, newton, iterate, automatic };

SteadyMethod steady_method_from_string(const std::string& s);

struct SolveOptions {
  double tol = 1e-10;
  std::size_t iterate_max_iter = 500;
  std::size_t newton_max_iter = 100;
  RelaxationOptions ode{};
  std::optional<StateVector> p0;
};

// `automatic` runs iterate -> newton -> ode, each on the predecessor's
// failure, recording failures in SteadyState::fallback_log. A named method
// runs alone. The ode relaxation starts from p0 or rho.
SteadyState solve_steady(const WeightedGraph& g, const ChainParams& params, SteadyMethod method,
                         const SolveOptions& options = {});

// Interior root of gh d x^2 - (a + b + gh d) x + b = 0, the common steady
// state of a regular graph with uniform rates. Degenerate provisos:
// a = 0 needs 0 < b < gh d (root b / (gh d)); b = 0 needs 0 < a < -gh d
// (root 1 + a / (gh d)). Throws DomainError "no interior root" otherwise.
double homogeneous_closed_form(double alpha, double beta, double gamma_hat, double d);

// Endemic SIS equilibrium beta / (d gamma) when 0 < beta < d gamma.
std::optional<double> sis_equilibrium(double beta, double gamma, double d);

struct VarianceBoundReport {
  SteadyState steady;
  double lambda1 = 0.0;
  double variance = 0.0;
  double bound = 0.0;  // <beta> / (lambda1 gh) if gh > 0, -<alpha> / (lambda1 gh) if gh < 0
  bool holds(double slack = 1e-10) const { return variance <= bound + slack; }
};

// Throws DomainError when gh == 0 or the graph is disconnected.
VarianceBoundReport variance_bound(const WeightedGraph& g, const ChainParams& params,
                                   double tol = 1e-12);

struct ExtremumCheck {
  Index node_max = 0;
  Index node_min = 0;
  double r_max = 0.0;  // R at (node_max, p_bar max), should be >= 0
  double r_min = 0.0;  // R at (node_min, p_bar min), should be <= 0
  bool passed = false;
};

ExtremumCheck extremum_bounds_check(const WeightedGraph& g, const ChainParams& params,
                                    const SteadyState& s, double slack = 1e-9);

// Both sides of the node-averaged steady-state balance:
//   lhs = -gh <d p q> - <(a + b) p> + <b>,  rhs = gh (1/N) r.L r, r = p - <p>.
struct AveragedIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

AveragedIdentity averaged_identity(const WeightedGraph& g, const ChainParams& params,
                                   const StateVector& p_bar);

}  // namespace mcnet
