#include "mcnet/entropy.hpp"

#include "mcnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcnet {

namespace {

constexpr double kLogFloor = 1e-300;

double safe_log(double x) { return std::log(std::max(x, kLogFloor)); }

void require_open_unit(const Vector& x, const char* what) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x(i) > 0.0 && x(i) < 1.0)) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " must lie strictly inside (0, 1)");
    }
  }
}

}  // namespace

double relative_entropy(double p, double p_bar) {
  require(p_bar > 0.0 && p_bar < 1.0, "relative_entropy: reference must be interior");
  require(p >= 0.0 && p <= 1.0, "relative_entropy: state must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return std::numeric_limits<double>::infinity();
  const double q = 1.0 - p;
  const double q_bar = 1.0 - p_bar;
  return p_bar * (safe_log(p_bar) - safe_log(p)) + q_bar * (safe_log(q_bar) - safe_log(q));
}

double relative_entropy(const StateVector& p, const StateVector& p_bar) {
  require_size(p.size(), p_bar.size(), "relative_entropy");
  require(p_bar.is_interior(), "relative_entropy: reference must be interior");
  double sum = 0.0;
  for (Index i = 0; i < p.size(); ++i) sum += relative_entropy(p[i], p_bar[i]);
  return sum;
}

double entropy_rate(const WeightedGraph& g, const ChainParams& params, const StateVector& p,
                    const StateVector& p_bar) {
  require_size(p_bar.size(), g.size(), "entropy_rate: reference");
  require_open_unit(p.p(), "entropy_rate: state");
  require_open_unit(p_bar.p(), "entropy_rate: reference");
  const Vector f = vector_field_w(g, params, p);
  const Vector weight = (p_bar.q().array() / p.q().array() - p_bar.p().array() / p.p().array())
                            .matrix();
  return weight.dot(f);
}

double entropy_rate(const WeightedGraph& g, const ChainParams& params, const StateVector& p,
                    const SteadyState& steady) {
  require(steady.residual < 1e-8, "entropy_rate: reference is not a verified steady state");
  return entropy_rate(g, params, p, steady.p_bar);
}

DescentMargin descent_margin(const ChainParams& params, const StateVector& p,
                             const StateVector& p_bar) {
  require_size(p.size(), p_bar.size(), "descent_margin");
  require_open_unit(p.p(), "descent_margin: state");
  require_open_unit(p_bar.p(), "descent_margin: reference");
  const auto x = p.p().array();
  const auto xb = p_bar.p().array();
  const auto q = 1.0 - x;
  const auto qb = 1.0 - xb;
  DescentMargin m;
  m.alpha_term = (params.alpha.array() * (qb - q).square() / (qb * q)).sum();
  m.beta_term = (params.beta.array() * (x - xb).square() / (xb * x)).sum();
  return m;
}

EntropyReport entropy_report(const WeightedGraph& g, const ChainParams& params,
                             const StateVector& p, const SteadyState& steady) {
  EntropyReport r;
  r.value = relative_entropy(p, steady.p_bar);
  r.near_boundary = p.boundary_distance() < kNearBoundary;
  if (p.is_interior()) {
    r.rate = entropy_rate(g, params, p, steady.p_bar);
    r.margin = descent_margin(params, p, steady.p_bar);
  } else {
    r.rate = -std::numeric_limits<double>::infinity();
    r.margin.alpha_term = std::numeric_limits<double>::infinity();
    r.margin.beta_term = std::numeric_limits<double>::infinity();
  }
  return r;
}

double lemma31_quantity(const LaplacianView& lv, const Vector& x, const Vector& y) {
  require_size(x.size(), lv.size(), "lemma31_quantity: x");
  require_size(y.size(), lv.size(), "lemma31_quantity: y");
  require_open_unit(x, "lemma31_quantity: x");
  require_open_unit(y, "lemma31_quantity: y");
  const Vector lx = apply_laplacian(lv, x);
  const Vector ly = apply_laplacian(lv, y);
  return ((y.array() / x.array()) * lx.array() + (x.array() / y.array()) * ly.array()).sum();
}

double lemma42_quantity(const LaplacianView& lv, const Vector& x) {
  require_size(x.size(), lv.size(), "lemma42_quantity");
  require_open_unit(x, "lemma42_quantity");
  const Vector lx = apply_laplacian(lv, x);
  return ((x.array() / (1.0 - x.array())) * lx.array()).sum();
}

}  // namespace mcnet
