#include "mcnet/cli.hpp"

#include "mcnet/dynamics.hpp"
#include "mcnet/io.hpp"
#include "mcnet/log.hpp"
#include "mcnet/steady.hpp"
#include "mcnet/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace mcnet {

namespace {

struct InstanceArgs {
  std::string graph_path;
  std::string params_path;

  Instance load() const {
    WeightedGraph g = load_graph_file(graph_path);
    ChainParams p = load_params_file(params_path, g.size());
    return Instance{std::move(g), std::move(p)};
  }
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

StateVector parse_initial(const std::string& spec, Index n) {
  if (spec.empty()) return StateVector::constant(n, 0.5);
  if (std::filesystem::exists(spec)) {
    StateVector s = load_state_file(spec);
    require_size(s.size(), n, "--p0");
    return s;
  }
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("--p0: cannot parse '" + item + "' as a number");
    }
  }
  if (values.size() == 1) return StateVector::constant(n, values.front());
  require_size(static_cast<Index>(values.size()), n, "--p0");
  return StateVector(Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size())));
}

Json state_json(const StateVector& s) {
  Json arr = Json::array();
  for (Index i = 0; i < s.size(); ++i) arr.push_back(s[i]);
  return arr;
}

struct SimulateArgs {
  InstanceArgs inst;
  double dt = 1e-3;
  double t_end = 0.0;
  std::string reference;
  std::string p0;
  std::size_t record_every = 1;
  std::string out;
  std::string summary;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Instance inst = a.inst.load();
  std::optional<StateVector> reference;
  if (!a.reference.empty()) {
    reference = load_state_file(a.reference);
    require_size(reference->size(), inst.graph.size(), "--reference");
  }
  const StateVector p0 = parse_initial(a.p0, inst.graph.size());
  const Trajectory traj = integrate(inst.graph, inst.params, p0,
                                    IntegrationOptions{a.dt, a.t_end, a.record_every}, reference);
  write_text_file(a.out, trajectory_csv(traj));

  Json summary;
  summary["samples"] = traj.size();
  summary["final_time"] = traj.times.back();
  summary["final_state"] = state_json(traj.states.back());
  summary["final_residual"] = traj.residuals.back();
  summary["clamp_events"] = traj.clamp_events;
  summary["has_entropy"] = traj.has_entropy();
  if (traj.has_entropy()) summary["final_entropy"] = traj.entropies.back();
  summary["trajectory"] = a.out;
  emit(a.summary, dump_json(summary), out);
  return kExitOk;
}

struct SteadyArgs {
  InstanceArgs inst;
  std::string method = "auto";
  double tol = 1e-10;
  std::string out;
};

int cmd_steady(const SteadyArgs& a, std::ostream& out) {
  const Instance inst = a.inst.load();
  SolveOptions o;
  o.tol = a.tol;
  const SteadyState s =
      solve_steady(inst.graph, inst.params, steady_method_from_string(a.method), o);
  emit(a.out, dump_json(steady_report(inst.graph, inst.params, s)), out);
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string graph_path;
  std::string params_path;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyConfig config;
  config.suite = a.suite;
  config.trials = a.trials;
  config.seed = a.seed;
  if (!a.graph_path.empty() || !a.params_path.empty()) {
    if (a.graph_path.empty() || a.params_path.empty()) {
      throw DomainError("verify: --graph and --params must be given together");
    }
    config.instance = InstanceArgs{a.graph_path, a.params_path}.load();
  }
  const VerifyResult r = run_verify(config);
  emit(a.out, dump_json(r.report), out);
  return r.ok() ? kExitOk : kExitViolation;
}

struct PresetArgs {
  std::string name;
  std::string topology;
  Index n = 0;
  Index d = 0;
  std::optional<double> alpha, beta, gamma, gamma01, gamma10;
  std::string out_dir;
};

WeightedGraph preset_graph(const std::string& topology, Index n, Index d) {
  if (topology == "circulant") return circulant_regular(n, d);
  if (topology == "cycle") return cycle_graph(n);
  if (topology == "complete") return complete_graph(n);
  if (topology == "path") return path_graph(n);
  if (topology == "star") return star_graph(n);
  throw DomainError("unknown topology '" + topology +
                    "' (expected circulant|cycle|complete|path|star)");
}

int cmd_preset(const PresetArgs& a, std::ostream& out) {
  Index n = a.n;
  Index d = a.d;
  std::string topology = a.topology;
  ChainParams params;
  if (a.name == "sis") {
    // alpha = 0 and gamma10 = 0; gamma01 is the infection rate, beta recovery.
    n = n ? n : 4;
    d = d ? d : 2;
    topology = topology.empty() ? "circulant" : topology;
    if (a.alpha && *a.alpha != 0.0) throw DomainError("preset sis fixes alpha = 0");
    if (a.gamma10 && *a.gamma10 != 0.0) throw DomainError("preset sis fixes gamma10 = 0");
    params = ChainParams::uniform(n, 0.0, a.beta.value_or(1.0), a.gamma.value_or(a.gamma01.value_or(1.0)),
                                  0.0);
  } else if (a.name == "homogeneous") {
    n = n ? n : 8;
    d = d ? d : 3;
    topology = topology.empty() ? "circulant" : topology;
    params = ChainParams::uniform(n, a.alpha.value_or(1.0), a.beta.value_or(1.0),
                                  a.gamma01.value_or(1.5), a.gamma10.value_or(0.5));
  } else if (a.name == "gamma-hat-zero") {
    n = n ? n : 6;
    topology = topology.empty() ? "star" : topology;
    const double gamma = a.gamma.value_or(a.gamma01.value_or(a.gamma10.value_or(1.0)));
    if ((a.gamma01 && *a.gamma01 != gamma) || (a.gamma10 && *a.gamma10 != gamma)) {
      throw DomainError("preset gamma-hat-zero needs gamma01 = gamma10");
    }
    params = ChainParams::uniform(n, a.alpha.value_or(1.0), a.beta.value_or(1.0), gamma, gamma);
  } else {
    throw DomainError("unknown preset '" + a.name + "' (expected sis|homogeneous|gamma-hat-zero)");
  }
  const WeightedGraph g = preset_graph(topology, n, d);
  std::filesystem::create_directories(a.out_dir);
  const auto graph_path = (std::filesystem::path(a.out_dir) / "graph.txt").string();
  const auto params_path = (std::filesystem::path(a.out_dir) / "params.json").string();
  write_text_file(graph_path,
                  "# preset " + a.name + " (" + topology + ", n=" + std::to_string(n) + ")\n" +
                      format_graph(g));
  write_text_file(params_path, dump_json(params_json(params)));
  Json summary;
  summary["preset"] = a.name;
  summary["graph"] = graph_path;
  summary["params"] = params_path;
  summary["nodes"] = n;
  summary["regular"] = g.is_regular();
  out << dump_json(summary);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interacting two-state Markov chains on weighted networks"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate the mean-field ODE with RK4");
  simulate->add_option("--graph", sim.inst.graph_path, "Edge-list file")->required();
  simulate->add_option("--params", sim.inst.params_path, "Params JSON file")->required();
  simulate->add_option("--dt", sim.dt, "Step size")->check(CLI::PositiveNumber);
  simulate->add_option("--t-end", sim.t_end, "Final time")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--reference", sim.reference, "Steady-state JSON for entropy recording");
  simulate->add_option("--p0", sim.p0, "Initial state: number, comma list, or JSON file");
  simulate->add_option("--record-every", sim.record_every, "Keep every k-th step")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim.out, "Trajectory CSV output")->required();
  simulate->add_option("--summary", sim.summary, "Summary JSON output (default stdout)");

  SteadyArgs st;
  auto* steady = app.add_subcommand("steady", "Compute the steady state");
  steady->add_option("--graph", st.inst.graph_path, "Edge-list file")->required();
  steady->add_option("--params", st.inst.params_path, "Params JSON file")->required();
  steady->add_option("--method", st.method, "ode|newton|iterate|auto")
      ->check(CLI::IsMember({"ode", "newton", "iterate", "auto"}));
  steady->add_option("--tol", st.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  steady->add_option("--out", st.out, "Report JSON output (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", ver.suite, "entropy|lemmas|bounds|embedding|all")
      ->check(CLI::IsMember({"entropy", "lemmas", "bounds", "embedding", "all"}));
  verify->add_option("--trials", ver.trials, "Trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.seed, "PRNG seed");
  verify->add_option("--graph", ver.graph_path, "Fixed instance edge-list file");
  verify->add_option("--params", ver.params_path, "Fixed instance params file");
  verify->add_option("--out", ver.out, "Report JSON output (default stdout)");

  PresetArgs pre;
  auto* preset = app.add_subcommand("preset", "Write canonical special-case instances");
  preset->add_option("name", pre.name, "sis|homogeneous|gamma-hat-zero")->required();
  preset->add_option("--topology", pre.topology, "circulant|cycle|complete|path|star");
  preset->add_option("--n", pre.n, "Node count")->check(CLI::PositiveNumber);
  preset->add_option("--d", pre.d, "Degree for circulant graphs")->check(CLI::NonNegativeNumber);
  preset->add_option("--alpha", pre.alpha, "Uniform alpha");
  preset->add_option("--beta", pre.beta, "Uniform beta");
  preset->add_option("--gamma", pre.gamma, "Coupling (sis: gamma01; gamma-hat-zero: both)");
  preset->add_option("--gamma01", pre.gamma01, "gamma01");
  preset->add_option("--gamma10", pre.gamma10, "gamma10");
  preset->add_option("--out-dir", pre.out_dir, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (steady->parsed()) return cmd_steady(st, out);
    if (verify->parsed()) return cmd_verify(ver, out);
    if (preset->parsed()) return cmd_preset(pre, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (last residual " << e.residual() << ")\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mcnet
