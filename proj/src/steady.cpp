#include "mcnet/steady.hpp"

#include "mcnet/log.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

namespace mcnet {

namespace {

// Real roots of a x^2 + b x + c = 0, computed without cancellation.
std::vector<double> quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q == 0.0) return {0.0};
  return {q / a, c / q};
}

bool strictly_opposite(double a, double b) { return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0); }

}  // namespace

QuadraticNodeModel::QuadraticNodeModel(const WeightedGraph& g, const ChainParams& params) {
  params.validate(g.size());
  const double gh = params.gamma_hat();
  quad_ = gh * g.degrees();
  lin_ = -(params.alpha + params.beta + gh * g.degrees());
  const_ = params.beta;
  rho_.resize(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    try {
      rho_(i) = solve(i, 0.0);
    } catch (const BracketError&) {
      // Reducible node without an interior root: fall back to the boundary zero.
      rho_(i) = const_(i) == 0.0 ? 0.0 : 1.0;
    }
  }
}

double QuadraticNodeModel::solve(Index i, double rhs, std::optional<double> hint) const {
  require(i >= 0 && i < size(), "QuadraticNodeModel::solve: node index out of range");
  require(std::isfinite(rhs), "QuadraticNodeModel::solve: rhs must be finite");
  const double a = quad_(i);
  const double b = lin_(i);
  const double c = const_(i) - rhs;
  const double f0 = c;
  const double f1 = a + b + c;
  auto f = [&](double x) { return (a * x + b) * x + c; };

  if (strictly_opposite(f0, f1)) {
    double lo = 0.0;
    double hi = 1.0;
    double flo = f0;
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (strictly_opposite(flo, fm)) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    const double root = 0.5 * (lo + hi);
    if (a != 0.0) {
      double gap = INFINITY;
      for (double r : quadratic_roots(a, b, c)) gap = std::min(gap, std::abs(r - root));
      if (gap > 1e-9) {
        throw NumericalError("QuadraticNodeModel::solve: bisection and quadratic formula disagree");
      }
    }
    return root;
  }

  // A root sitting on an endpoint where R - rhs vanishes (alpha = 0 or
  // beta = 0 nodes) is a boundary root, even if rounding moved it inside.
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  const double eps = 1e-14 * scale;
  std::vector<double> interior;
  for (double r : quadratic_roots(a, b, c)) {
    if (!(r > 0.0 && r < 1.0)) continue;
    if (std::abs(f0) <= eps && r < 1e-9) continue;
    if (std::abs(f1) <= eps && r > 1.0 - 1e-9) continue;
    interior.push_back(r);
  }
  if (interior.empty()) {
    throw BracketError("iteration left the bracket: no root in (0, 1) at node " + std::to_string(i));
  }
  if (interior.size() == 1) return interior.front();
  if (!hint) {
    throw BracketError("two roots in (0, 1) at node " + std::to_string(i) +
                       " and no previous iterate to choose between them");
  }
  return std::abs(interior[0] - *hint) <= std::abs(interior[1] - *hint) ? interior[0] : interior[1];
}

double solve_R(Index i, const ChainParams& params, const WeightedGraph& g, double rhs,
               std::optional<double> hint) {
  return QuadraticNodeModel(g, params).solve(i, rhs, hint);
}

SteadyState iterate_steady(const WeightedGraph& g, const ChainParams& params,
                           const IterateOptions& options) {
  require(options.tol > 0.0, "iterate_steady: tol must be positive");
  if (!params.irreducible()) log_warn("iterate_steady: parameters are not irreducible");
  const QuadraticNodeModel model(g, params);
  const LaplacianView lv = laplacian(g);
  const double gh = params.gamma_hat();

  Vector p = model.rho();
  double res = residual_norm(g, params, StateVector(p));
  if (res < options.tol) {
    return SteadyState{StateVector(p), res, SolverMethod::iterate, 0, {}};
  }
  Vector next(p.size());
  for (std::size_t k = 1; k <= options.max_iter; ++k) {
    const Vector l = apply_laplacian(lv, p);
    for (Index i = 0; i < p.size(); ++i) {
      const double rhs = gh * p(i) * l(i) + params.gamma10 * l(i);
      try {
        next(i) = model.solve(i, rhs, p(i));
      } catch (const BracketError& e) {
        throw ConvergenceError(std::string("iterate_steady: sweep ") + std::to_string(k) + ": " +
                                   e.what(),
                               StateVector(p), res, k);
      }
    }
    const double step = (next - p).lpNorm<Eigen::Infinity>();
    p = next;
    res = residual_norm(g, params, StateVector(p));
    if (step < options.tol && res < 10.0 * options.tol) {
      return SteadyState{StateVector(p), res, SolverMethod::iterate, k, {}};
    }
  }
  throw ConvergenceError("iterate_steady: no convergence within max_iter sweeps", StateVector(p),
                         res, options.max_iter);
}

namespace {

Vector nudge_interior(Vector p) {
  constexpr double eps = 1e-9;
  return p.cwiseMax(eps).cwiseMin(1.0 - eps);
}

bool open_cube(const Vector& p) { return (p.array() > 0.0).all() && (p.array() < 1.0).all(); }

}  // namespace

SteadyState newton_steady(const WeightedGraph& g, const ChainParams& params,
                          const NewtonOptions& options) {
  require(options.tol > 0.0, "newton_steady: tol must be positive");
  if (!params.irreducible()) log_warn("newton_steady: parameters are not irreducible");
  Vector p = options.p0 ? options.p0->p() : QuadraticNodeModel(g, params).rho();
  require_size(p.size(), g.size(), "newton_steady: p0");
  p = nudge_interior(std::move(p));

  // Each iteration first tries a damped Newton step, accepted on decrease
  // of ||F||_2, provided the full step stays in the open cube. Otherwise
  // (the Newton direction may point at a root outside the cube) a
  // pseudo-transient step (I/tau - J) delta = F is taken instead; it tracks
  // the flow for small tau and tends to the Newton step as tau grows.
  Vector f = vector_field_w(g, params, StateVector(p));
  double res = f.lpNorm<Eigen::Infinity>();
  double merit = f.norm();
  double best = res;
  double tau = 0.0;
  std::deque<double> history{best};
  const Index n = p.size();
  for (std::size_t k = 0; k <= options.max_iter; ++k) {
    if (res < options.tol) return SteadyState{StateVector(p), res, SolverMethod::newton, k, {}};
    if (k == options.max_iter) break;

    const Matrix j = jacobian(g, params, StateVector(p));
    const Eigen::FullPivLU<Matrix> lu(j);
    bool moved = false;
    bool newton_regime = true;
    const Vector delta = lu.isInvertible() ? Vector(lu.solve(-f)) : Vector();
    if (lu.isInvertible() && open_cube(p + delta)) {
      double lambda = 1.0;
      for (int halvings = 0; halvings <= 6; ++halvings, lambda *= 0.5) {
        const Vector trial = p + lambda * delta;
        const Vector ft = vector_field_w(g, params, StateVector(trial));
        const double mt = ft.norm();
        if (mt < merit) {
          p = trial;
          f = ft;
          merit = mt;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      const double scale = std::max(j.cwiseAbs().rowwise().sum().maxCoeff(), 1e-12);
      if (tau == 0.0) tau = 1.0 / scale;
      for (int halvings = 0; halvings <= 50 && !moved; ++halvings, tau *= 0.5) {
        const Matrix shifted = Matrix::Identity(n, n) / tau - j;
        const Vector trial = p + Eigen::PartialPivLU<Matrix>(shifted).solve(f);
        if (!trial.allFinite() || !open_cube(trial)) continue;
        p = trial;
        f = vector_field_w(g, params, StateVector(p));
        merit = f.norm();
        moved = true;
      }
      if (!moved) {
        throw ConvergenceError("newton_steady: no admissible step inside the cube", StateVector(p),
                               res, k);
      }
      newton_regime = tau * scale > 1e8;
      tau *= 2.0;
    }
    res = f.lpNorm<Eigen::Infinity>();
    best = std::min(best, res);
    history.push_back(best);
    if (history.size() > 6) history.pop_front();
    if (newton_regime && history.size() == 6 && history.front() - history.back() < 1e-16) {
      throw ConvergenceError("newton_steady: stagnation", StateVector(p), res, k + 1);
    }
  }
  throw ConvergenceError("newton_steady: no convergence within max_iter", StateVector(p), res,
                         options.max_iter);
}

SteadyMethod steady_method_from_string(const std::string& s) {
  if (s == "ode") return SteadyMethod::ode;
  if (s == "newton") return SteadyMethod::newton;
  if (s == "iterate") return SteadyMethod::iterate;
  if (s == "auto") return SteadyMethod::automatic;
  throw DomainError("unknown steady method '" + s + "' (expected ode|newton|iterate|auto)");
}

SteadyState solve_steady(const WeightedGraph& g, const ChainParams& params, SteadyMethod method,
                         const SolveOptions& options) {
  auto run_iterate = [&] {
    return iterate_steady(g, params, IterateOptions{options.tol, options.iterate_max_iter});
  };
  auto run_newton = [&] {
    return newton_steady(g, params, NewtonOptions{options.tol, options.newton_max_iter, options.p0});
  };
  auto run_ode = [&] {
    RelaxationOptions ode = options.ode;
    ode.tol = options.tol;
    const StateVector start = options.p0 ? *options.p0
                                         : StateVector(nudge_interior(QuadraticNodeModel(g, params).rho()));
    return integrate_to_steady(g, params, start, ode);
  };

  switch (method) {
    case SteadyMethod::iterate: return run_iterate();
    case SteadyMethod::newton: return run_newton();
    case SteadyMethod::ode: return run_ode();
    case SteadyMethod::automatic: break;
  }

  std::vector<std::string> log;
  try {
    return run_iterate();
  } catch (const NumericalError& e) {
    log.push_back(std::string("iterate: ") + e.what());
    log_info(log.back());
  }
  try {
    SteadyState s = run_newton();
    s.fallback_log = log;
    return s;
  } catch (const NumericalError& e) {
    log.push_back(std::string("newton: ") + e.what());
    log_info(log.back());
  }
  SteadyState s = run_ode();
  s.fallback_log = log;
  return s;
}

double homogeneous_closed_form(double alpha, double beta, double gamma_hat, double d) {
  require(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma_hat) &&
              std::isfinite(d),
          "homogeneous_closed_form: inputs must be finite");
  require(alpha >= 0.0 && beta >= 0.0 && d >= 0.0,
          "homogeneous_closed_form: alpha, beta, d must be nonnegative");
  const double g = gamma_hat * d;
  if (alpha > 0.0 && beta > 0.0) {
    if (g == 0.0) return beta / (alpha + beta);
    for (double r : quadratic_roots(g, -(alpha + beta + g), beta))
      if (r > 0.0 && r < 1.0) return r;
    throw NumericalError("homogeneous_closed_form: interior root not found");
  }
  if (alpha == 0.0 && beta > 0.0 && beta < g) return beta / g;
  if (beta == 0.0 && alpha > 0.0 && alpha < -g) return 1.0 + alpha / g;
  throw DomainError("homogeneous_closed_form: no interior root");
}

std::optional<double> sis_equilibrium(double beta, double gamma, double d) {
  require(beta >= 0.0 && gamma > 0.0 && d > 0.0,
          "sis_equilibrium: needs beta >= 0, gamma > 0, d > 0");
  if (beta > 0.0 && beta < d * gamma) return beta / (d * gamma);
  return std::nullopt;
}

namespace {

SteadyState newton_then_ode(const WeightedGraph& g, const ChainParams& params, double tol) {
  try {
    return newton_steady(g, params, NewtonOptions{tol, 100, std::nullopt});
  } catch (const NumericalError& e) {
    log_info(std::string("newton: ") + e.what());
    SolveOptions o;
    o.tol = std::max(tol, 1e-13);
    SteadyState s = solve_steady(g, params, SteadyMethod::ode, o);
    s.fallback_log.push_back(std::string("newton: ") + e.what());
    return s;
  }
}

}  // namespace

VarianceBoundReport variance_bound(const WeightedGraph& g, const ChainParams& params, double tol) {
  const double gh = params.gamma_hat();
  if (gh == 0.0) throw DomainError("variance bound undefined for gamma_hat = 0");
  VarianceBoundReport r;
  r.lambda1 = lambda_1(g);
  r.steady = newton_then_ode(g, params, tol);
  r.variance = variance(r.steady.p_bar.p());
  r.bound = gh > 0.0 ? params.beta.mean() / (r.lambda1 * gh) : -params.alpha.mean() / (r.lambda1 * gh);
  return r;
}

ExtremumCheck extremum_bounds_check(const WeightedGraph& g, const ChainParams& params,
                                    const SteadyState& s, double slack) {
  require_size(s.p_bar.size(), g.size(), "extremum_bounds_check");
  const QuadraticNodeModel model(g, params);
  const Vector& p = s.p_bar.p();
  ExtremumCheck c;
  p.maxCoeff(&c.node_max);
  p.minCoeff(&c.node_min);
  c.r_max = model.evaluate(c.node_max, p(c.node_max));
  c.r_min = model.evaluate(c.node_min, p(c.node_min));
  c.passed = c.r_max >= -slack && c.r_min <= slack;
  return c;
}

AveragedIdentity averaged_identity(const WeightedGraph& g, const ChainParams& params,
                                   const StateVector& p_bar) {
  require_size(p_bar.size(), g.size(), "averaged_identity");
  params.validate(g.size());
  const double gh = params.gamma_hat();
  const auto p = p_bar.p().array();
  const Vector q = p_bar.q();
  const auto d = g.degrees().array();
  AveragedIdentity out;
  out.lhs = -gh * (d * p * q.array()).mean() -
            ((params.alpha.array() + params.beta.array()) * p).mean() + params.beta.mean();
  const Vector r = (p - p.mean()).matrix();
  out.rhs = gh * quadratic_form(laplacian(g), r) / static_cast<double>(g.size());
  return out;
}

}  // namespace mcnet
