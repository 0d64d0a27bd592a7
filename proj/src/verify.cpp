#include "mcnet/verify.hpp"

#include "mcnet/dynamics.hpp"
#include "mcnet/entropy.hpp"
#include "mcnet/hypercube.hpp"
#include "mcnet/steady.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace mcnet {

namespace {

constexpr std::size_t kMaxRecordedViolations = 20;

Json instance_json(const WeightedGraph& g, const ChainParams* params) {
  Json j;
  j["graph"] = format_graph(g);
  if (params) j["params"] = params_json(*params);
  return j;
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// Per-property counters. A check passes when its excess is <= 0.
class Tally {
 public:
  struct Property {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::size_t not_applicable = 0;
    std::optional<double> worst;
  };

  Property& get(const std::string& name) {
    for (auto& p : props_)
      if (p.name == name) return p;
    props_.push_back(Property{name, 0, 0, 0, std::nullopt});
    return props_.back();
  }

  // Returns true when the check passed.
  bool check(const std::string& name, double excess, std::size_t trial, const Json& context) {
    Property& p = get(name);
    ++p.checks;
    if (!p.worst || excess > *p.worst || std::isnan(excess)) p.worst = excess;
    if (excess <= 0.0) return true;
    ++p.violations;
    ++total_violations_;
    if (recorded_.size() < kMaxRecordedViolations) {
      Json v = context;
      v["property"] = name;
      v["trial"] = trial;
      v["excess"] = excess;
      recorded_.push_back(std::move(v));
    }
    return false;
  }

  void not_applicable(const std::string& name, const std::string& reason) {
    Property& p = get(name);
    ++p.not_applicable;
    reasons_[name] = reason;
  }

  std::size_t violations() const { return total_violations_; }

  Json properties_json() const {
    Json out = Json::object();
    for (const auto& p : props_) {
      Json j;
      j["checks"] = p.checks;
      j["violations"] = p.violations;
      j["not_applicable"] = p.not_applicable;
      j["worst_excess"] = p.worst ? Json(*p.worst) : Json(nullptr);
      if (p.checks == 0 && p.not_applicable > 0) {
        j["status"] = "not applicable";
        j["reason"] = reasons_.at(p.name);
      } else {
        j["status"] = p.violations == 0 ? "pass" : "fail";
      }
      out[p.name] = j;
    }
    return out;
  }

  const std::vector<Json>& recorded() const { return recorded_; }

 private:
  std::vector<Property> props_;
  std::map<std::string, std::string> reasons_;
  std::vector<Json> recorded_;
  std::size_t total_violations_ = 0;
};

Instance draw_instance(const VerifyConfig& config, Rng& rng, bool connected) {
  if (config.instance) return *config.instance;
  RandomInstanceOptions opts;
  opts.max_nodes = 20;
  opts.connected = connected;
  return random_instance(rng, opts);
}

SteadyState reference_state(const Instance& inst) {
  SolveOptions o;
  o.tol = 1e-12;
  try {
    return solve_steady(inst.graph, inst.params, SteadyMethod::newton, o);
  } catch (const NumericalError&) {
    return solve_steady(inst.graph, inst.params, SteadyMethod::automatic, o);
  }
}

void entropy_suite(const VerifyConfig& config, Tally& tally) {
  const char* monotone = "entropy_monotone_descent";
  const char* nonpositive = "entropy_rate_nonpositive";
  const char* bound = "entropy_rate_descent_bound";
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, t * 16 + 1));
    const Instance inst = draw_instance(config, rng, false);
    const Index n = inst.graph.size();
    if (!inst.params.irreducible()) {
      for (const char* name : {monotone, nonpositive, bound})
        tally.not_applicable(name, "parameters are not irreducible");
      continue;
    }
    const SteadyState steady = reference_state(inst);
    const StateVector p0(random_interior(rng, n));
    Json ctx;
    ctx["instance"] = instance_json(inst.graph, &inst.params);
    ctx["p0"] = vector_json(p0.p());

    const Trajectory traj =
        integrate(inst.graph, inst.params, p0, IntegrationOptions{1e-3, 1.0, 1}, steady.p_bar);
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
      const double rise = traj.entropies[k + 1] - traj.entropies[k];
      Json c = ctx;
      c["step"] = k;
      if (!tally.check(monotone, rise - 1e-9, t, c)) break;
    }

    std::vector<StateVector> samples;
    for (std::size_t k = 0; k < traj.size(); k += 50) samples.push_back(traj.states[k]);
    for (int s = 0; s < 20; ++s) samples.emplace_back(random_interior(rng, n));
    for (const auto& p : samples) {
      if (!p.is_interior()) continue;
      const double rate = entropy_rate(inst.graph, inst.params, p, steady);
      const double b = descent_margin(inst.params, p, steady.p_bar).bound();
      Json c = ctx;
      c["state"] = vector_json(p.p());
      tally.check(nonpositive, rate - 1e-9, t, c);
      tally.check(bound, rate - b - 1e-9, t, c);
    }
  }
}

void lemma_suite(const VerifyConfig& config, Tally& tally) {
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, t * 16 + 2));
    const Index n = config.instance ? config.instance->graph.size() : rng.integer(2, 20);
    const WeightedGraph g = config.instance ? config.instance->graph : random_graph(rng, n, {});
    const LaplacianView lv = laplacian(g);
    const Vector x = random_interior(rng, n);
    const Vector y = random_interior(rng, n);
    const Vector c = Vector::Constant(n, rng.uniform());
    Json ctx;
    ctx["instance"] = instance_json(g, nullptr);
    ctx["x"] = vector_json(x);
    ctx["y"] = vector_json(y);
    tally.check("lemma31_nonpositive", lemma31_quantity(lv, x, y) - 1e-10, t, ctx);
    tally.check("lemma31_equality", std::abs(lemma31_quantity(lv, x, x)) - 1e-10, t, ctx);
    tally.check("lemma42_nonnegative", -1e-10 - lemma42_quantity(lv, x), t, ctx);
    tally.check("lemma42_equality", std::abs(lemma42_quantity(lv, c)) - 1e-10, t, ctx);
  }
}

void bounds_suite(const VerifyConfig& config, Tally& tally) {
  const char* var = "variance_bound";
  const char* ext = "extremum_signs";
  const char* avg = "averaged_identity";
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, t * 16 + 3));
    const Instance inst = draw_instance(config, rng, true);
    if (!is_connected(inst.graph) || inst.graph.size() < 2) {
      for (const char* name : {var, ext, avg}) tally.not_applicable(name, "graph is not connected");
      continue;
    }
    const SteadyState steady = reference_state(inst);
    Json ctx;
    ctx["instance"] = instance_json(inst.graph, &inst.params);
    ctx["p_bar"] = vector_json(steady.p_bar.p());

    if (inst.params.gamma_hat() == 0.0) {
      tally.not_applicable(var, "gamma_hat = 0: the bound is undefined");
    } else {
      const VarianceBoundReport r = variance_bound(inst.graph, inst.params);
      tally.check(var, r.variance - r.bound - 1e-10, t, ctx);
    }
    const ExtremumCheck ec = extremum_bounds_check(inst.graph, inst.params, steady);
    tally.check(ext, std::max(-ec.r_max, ec.r_min) - 1e-9, t, ctx);
    const AveragedIdentity ai = averaged_identity(inst.graph, inst.params, steady.p_bar);
    tally.check(avg, std::abs(ai.lhs - ai.rhs) - 1e-9, t, ctx);
  }
}

void embedding_suite(const VerifyConfig& config, Tally& tally) {
  const char* norm = "embed_normalization";
  const char* marg = "embed_marginals";
  const char* pres = "embed_entropy_preservation";
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, t * 16 + 4));
    const Index n = config.instance ? config.instance->graph.size()
                                    : static_cast<Index>(1 + t % 10);
    if (n > kMaxHypercubeNodes) {
      for (const char* name : {norm, marg, pres})
        tally.not_applicable(name, "node count exceeds the hypercube limit");
      continue;
    }
    const StateVector p(random_interior(rng, n));
    const StateVector p_bar(random_interior(rng, n));
    const HypercubeDistribution a = embed(p);
    const HypercubeDistribution b = embed(p_bar);
    Json ctx;
    ctx["p"] = vector_json(p.p());
    ctx["p_bar"] = vector_json(p_bar.p());
    tally.check(norm, std::abs(a.probs.sum() - 1.0) - 1e-12, t, ctx);
    double worst = 0.0;
    for (Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(marginal_zero(a, i) - p[i]));
    tally.check(marg, worst - 1e-12, t, ctx);
    const double lifted = hypercube_relative_entropy(a, b);
    tally.check(pres, std::abs(lifted - relative_entropy(p, p_bar)) - 1e-10, t, ctx);
  }
}

}  // namespace

VerifyResult run_verify(const VerifyConfig& config) {
  const std::string& s = config.suite;
  const bool all = s == "all";
  if (!all && s != "entropy" && s != "lemmas" && s != "bounds" && s != "embedding") {
    throw DomainError("unknown verify suite '" + s + "' (expected entropy|lemmas|bounds|embedding|all)");
  }
  require(config.trials > 0, "verify: trials must be positive");
  if (config.instance) config.instance->params.validate(config.instance->graph.size());

  Tally tally;
  if (all || s == "entropy") entropy_suite(config, tally);
  if (all || s == "lemmas") lemma_suite(config, tally);
  if (all || s == "bounds") bounds_suite(config, tally);
  if (all || s == "embedding") embedding_suite(config, tally);

  VerifyResult result;
  result.violations = tally.violations();
  Json& r = result.report;
  r["suite"] = s;
  r["seed"] = config.seed;
  r["trials"] = config.trials;
  r["instance"] = config.instance ? "fixed" : "random";
  r["properties"] = tally.properties_json();
  r["violation_count"] = tally.violations();
  r["violations"] = tally.recorded();
  r["ok"] = result.ok();
  return result;
}

}  // namespace mcnet
