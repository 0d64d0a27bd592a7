#include "mcnet/dynamics.hpp"

#include "mcnet/entropy.hpp"
#include "mcnet/log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mcnet {

namespace {

void check_inputs(const WeightedGraph& g, const ChainParams& params, const StateVector& p) {
  params.validate(g.size());
  require_size(p.size(), g.size(), "state");
}

// W-form field on an arbitrary (possibly slightly out-of-cube) vector; used
// for RK4 stages where the clamp has not been applied yet.
Vector field_raw(const WeightedGraph& g, const ChainParams& params, const Vector& p) {
  const Vector q = Vector::Ones(p.size()) - p;
  const Vector wq = g.weights() * q;
  const Vector wp = g.weights() * p;
  return (-params.alpha.array() * p.array() + params.beta.array() * q.array() -
          params.gamma01 * p.array() * wq.array() + params.gamma10 * q.array() * wp.array())
      .matrix();
}

}  // namespace

Vector vector_field_w(const WeightedGraph& g, const ChainParams& params, const StateVector& p) {
  check_inputs(g, params, p);
  return field_raw(g, params, p.p());
}

Vector vector_field_laplacian(const LaplacianView& lv, const ChainParams& params,
                              const StateVector& p) {
  params.validate(lv.size());
  require_size(p.size(), lv.size(), "state");
  const double gh = params.gamma_hat();
  const auto x = p.p().array();
  const auto d = lv.degrees.array();
  const Vector lp = apply_laplacian(lv, p.p());
  const auto l = lp.array();
  return (gh * d * x.square() - (params.alpha.array() + params.beta.array() + gh * d) * x +
          params.beta.array() - gh * x * l - params.gamma10 * l)
      .matrix();
}

Vector vector_field_laplacian(const WeightedGraph& g, const ChainParams& params,
                              const StateVector& p) {
  return vector_field_laplacian(laplacian(g), params, p);
}

Matrix jacobian(const WeightedGraph& g, const ChainParams& params, const StateVector& p) {
  check_inputs(g, params, p);
  const Index n = g.size();
  const Vector& x = p.p();
  const Vector q = p.q();
  const Vector wq = g.weights() * q;
  const Vector wp = g.weights() * x;
  Matrix j(n, n);
  for (Index i = 0; i < n; ++i) {
    const double row_scale = params.gamma01 * x(i) + params.gamma10 * q(i);
    for (Index k = 0; k < n; ++k) j(i, k) = g.weight(i, k) * row_scale;
    j(i, i) = -params.alpha(i) - params.beta(i) - params.gamma01 * wq(i) - params.gamma10 * wp(i);
  }
  return j;
}

double boundary_inwardness(const WeightedGraph& g, const ChainParams& params,
                           const StateVector& p, Index i) {
  check_inputs(g, params, p);
  require(i >= 0 && i < g.size(), "boundary_inwardness: face index out of range");
  const double pi = p[i];
  require(pi == 0.0 || pi == 1.0, "boundary_inwardness: p[i] must be exactly 0 or 1");
  const double li = pi * g.degree(i) - g.weights().row(i).dot(p.p());
  return pi == 0.0 ? params.beta(i) - params.gamma10 * li : -params.alpha(i) - params.gamma01 * li;
}

double residual_norm(const WeightedGraph& g, const ChainParams& params, const StateVector& p) {
  return vector_field_w(g, params, p).lpNorm<Eigen::Infinity>();
}

namespace {

struct Stepper {
  const WeightedGraph& g;
  const ChainParams& params;

  // One RK4 step from p with derivative k1 = F(p) already known.
  Vector step(const Vector& p, const Vector& k1, double h) const {
    const Vector k2 = field_raw(g, params, p + 0.5 * h * k1);
    const Vector k3 = field_raw(g, params, p + 0.5 * h * k2);
    const Vector k4 = field_raw(g, params, p + h * k3);
    return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

StateVector clamp_checked(Vector next, std::size_t step, std::size_t& clamp_events,
                          double* excursion = nullptr) {
  if (!next.allFinite()) {
    throw NumericalError("non-finite state encountered at step " + std::to_string(step));
  }
  if (excursion && next.size() > 0) {
    const double out = std::max(-next.minCoeff(), next.maxCoeff() - 1.0);
    *excursion = std::max(*excursion, out);
  }
  std::size_t moved = 0;
  StateVector s = StateVector::clamped(std::move(next), &moved);
  clamp_events += moved;
  return s;
}

}  // namespace

Trajectory integrate(const WeightedGraph& g, const ChainParams& params, const StateVector& p0,
                     const IntegrationOptions& options,
                     const std::optional<StateVector>& reference) {
  check_inputs(g, params, p0);
  require(options.dt > 0.0 && std::isfinite(options.dt), "integrate: dt must be positive");
  require(options.t_end > 0.0 && std::isfinite(options.t_end), "integrate: t_end must be positive");
  require(options.record_every >= 1, "integrate: record_every must be >= 1");
  if (reference) {
    require_size(reference->size(), g.size(), "reference");
    require(reference->is_interior(), "integrate: reference state must be interior");
  }
  if (!params.irreducible()) log_warn("integrate: parameters are not irreducible");

  const Stepper stepper{g, params};
  Trajectory traj;
  auto record = [&](double t, const StateVector& s, const Vector& f) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.residuals.push_back(f.lpNorm<Eigen::Infinity>());
    if (reference) traj.entropies.push_back(relative_entropy(s, *reference));
  };

  const auto steps = static_cast<std::size_t>(std::ceil(options.t_end / options.dt - 1e-9));
  StateVector state = p0;
  Vector f = field_raw(g, params, state.p());
  record(0.0, state, f);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * options.dt;
    const double t = k == steps ? options.t_end : static_cast<double>(k) * options.dt;
    state = clamp_checked(stepper.step(state.p(), f, t - t_prev), k, traj.clamp_events,
                          &traj.max_excursion);
    f = field_raw(g, params, state.p());
    if (k % options.record_every == 0 || k == steps) record(t, state, f);
  }
  if (traj.clamp_events > 0) {
    log_debug("integrate: clamped " + std::to_string(traj.clamp_events) + " entries");
  }
  return traj;
}

SteadyState integrate_to_steady(const WeightedGraph& g, const ChainParams& params,
                                const StateVector& p0, const RelaxationOptions& options) {
  check_inputs(g, params, p0);
  require(options.dt > 0.0, "integrate_to_steady: dt must be positive");
  require(options.tol > 0.0, "integrate_to_steady: tol must be positive");
  require(options.max_time > 0.0, "integrate_to_steady: max_time must be positive");
  if (!params.irreducible()) log_warn("integrate_to_steady: parameters are not irreducible");

  const Stepper stepper{g, params};
  const auto max_steps = static_cast<std::size_t>(std::ceil(options.max_time / options.dt));
  StateVector state = p0;
  Vector f = field_raw(g, params, state.p());
  double res = f.lpNorm<Eigen::Infinity>();
  StateVector best = state;
  double best_res = res;
  std::size_t clamps = 0;
  for (std::size_t k = 0; k <= max_steps; ++k) {
    if (res < options.tol) {
      SteadyState out;
      out.p_bar = state;
      out.residual = res;
      out.method = SolverMethod::ode;
      out.iterations = k;
      return out;
    }
    if (k == max_steps) break;
    state = clamp_checked(stepper.step(state.p(), f, options.dt), k + 1, clamps);
    f = field_raw(g, params, state.p());
    res = f.lpNorm<Eigen::Infinity>();
    if (res < best_res) {
      best_res = res;
      best = state;
    }
  }
  throw ConvergenceError("integrate_to_steady: max_time exceeded before reaching tolerance", best,
                         best_res, max_steps);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const Index n = traj.states.empty() ? 0 : traj.states.front().size();
  for (Index i = 0; i < n; ++i) out += ",p_" + std::to_string(i);
  out += ",residual";
  if (traj.has_entropy()) out += ",entropy";
  out += '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  for (std::size_t k = 0; k < traj.size(); ++k) {
    put(traj.times[k]);
    for (Index i = 0; i < n; ++i) {
      out += ',';
      put(traj.states[k][i]);
    }
    out += ',';
    put(traj.residuals[k]);
    if (traj.has_entropy()) {
      out += ',';
      put(traj.entropies[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mcnet
