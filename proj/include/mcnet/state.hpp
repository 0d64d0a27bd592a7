#pragma once

#include "mcnet/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcnet {

// Per-node rates alpha (|0> -> |1>), beta (|1> -> |0>) and the two global
// bilinear coupling constants.
struct ChainParams {
  Vector alpha;
  Vector beta;
  double gamma01 = 0.0;
  double gamma10 = 0.0;

  static ChainParams uniform(Index n, double alpha, double beta, double gamma01,
                             double gamma10);

  Index size() const { return alpha.size(); }
  double gamma_hat() const { return gamma01 - gamma10; }
  // All alpha and beta strictly positive.
  bool irreducible() const;
  // Throws DomainError unless sizes equal n and all entries are finite, >= 0.
  void validate(Index n) const;
};

// A point of the unit cube: probability of state |0> at each node.
class StateVector {
 public:
  StateVector() = default;
  // Throws DomainError if any entry is non-finite or outside [0, 1].
  explicit StateVector(Vector p);
  static StateVector constant(Index n, double value);
  // Clamps each entry into [0, 1]; returns how many entries moved.
  static StateVector clamped(Vector p, std::size_t* moved = nullptr);

  Index size() const { return p_.size(); }
  const Vector& p() const { return p_; }
  Vector q() const { return Vector::Ones(p_.size()) - p_; }
  double operator[](Index i) const { return p_(i); }

  bool is_interior() const;
  // Smallest distance of any entry to {0, 1}.
  double boundary_distance() const;

 private:
  Vector p_;
};

enum class SolverMethod { ode, newton, iterate, closed_form };

std::string to_string(SolverMethod m);
SolverMethod solver_method_from_string(const std::string& s);

struct SteadyState {
  StateVector p_bar;
  double residual = 0.0;  // ||F(p_bar)||_inf
  SolverMethod method = SolverMethod::newton;
  std::size_t iterations = 0;
  // Failed solvers tried before the one that produced this state.
  std::vector<std::string> fallback_log;
};

// A solver stopped before reaching its tolerance; carries its best state.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::optional<StateVector> best, double residual,
                   std::size_t iterations)
      : NumericalError(what), best_(std::move(best)), residual_(residual), iterations_(iterations) {}

  const std::optional<StateVector>& best() const { return best_; }
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  std::optional<StateVector> best_;
  double residual_;
  std::size_t iterations_;
};

inline double mean(const Vector& x) { return x.mean(); }

// Population variance (1/N).
inline double variance(const Vector& x) {
  const double m = x.mean();
  return (x.array() - m).square().mean();
}

}  // namespace mcnet
