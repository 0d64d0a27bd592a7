#include "mcnet/state.hpp"

#include <algorithm>
#include <cmath>

namespace mcnet {

ChainParams ChainParams::uniform(Index n, double alpha, double beta, double gamma01,
                                 double gamma10) {
  ChainParams p{Vector::Constant(n, alpha), Vector::Constant(n, beta), gamma01, gamma10};
  p.validate(n);
  return p;
}

bool ChainParams::irreducible() const {
  return (alpha.array() > 0.0).all() && (beta.array() > 0.0).all();
}

void ChainParams::validate(Index n) const {
  require_size(alpha.size(), n, "alpha");
  require_size(beta.size(), n, "beta");
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  for (Index i = 0; i < n; ++i) {
    require(ok(alpha(i)), "alpha entries must be finite and nonnegative");
    require(ok(beta(i)), "beta entries must be finite and nonnegative");
  }
  require(ok(gamma01), "gamma01 must be finite and nonnegative");
  require(ok(gamma10), "gamma10 must be finite and nonnegative");
}

StateVector::StateVector(Vector p) : p_(std::move(p)) {
  for (Index i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_(i)) || p_(i) < 0.0 || p_(i) > 1.0) {
      throw DomainError("state entry p[" + std::to_string(i) + "] = " + std::to_string(p_(i)) +
                        " lies outside [0, 1]");
    }
  }
}

StateVector StateVector::constant(Index n, double value) {
  return StateVector(Vector::Constant(n, value));
}

StateVector StateVector::clamped(Vector p, std::size_t* moved) {
  std::size_t count = 0;
  for (Index i = 0; i < p.size(); ++i) {
    require(std::isfinite(p(i)), "cannot clamp a non-finite state entry");
    const double c = std::clamp(p(i), 0.0, 1.0);
    if (c != p(i)) ++count;
    p(i) = c;
  }
  if (moved) *moved = count;
  return StateVector(std::move(p));
}

bool StateVector::is_interior() const {
  return (p_.array() > 0.0).all() && (p_.array() < 1.0).all();
}

double StateVector::boundary_distance() const {
  if (p_.size() == 0) return 0.0;
  return p_.array().min(1.0 - p_.array()).minCoeff();
}

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::ode: return "ode";
    case SolverMethod::newton: return "newton";
    case SolverMethod::iterate: return "iterate";
    case SolverMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

SolverMethod solver_method_from_string(const std::string& s) {
  if (s == "ode") return SolverMethod::ode;
  if (s == "newton") return SolverMethod::newton;
  if (s == "iterate") return SolverMethod::iterate;
  if (s == "closed_form") return SolverMethod::closed_form;
  throw DomainError("unknown solver method '" + s + "'");
}

}  // namespace mcnet
