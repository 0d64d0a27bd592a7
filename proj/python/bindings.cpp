#include "mcnet/dynamics.hpp"
#include "mcnet/entropy.hpp"
#include "mcnet/graph.hpp"
#include "mcnet/hypercube.hpp"
#include "mcnet/io.hpp"
#include "mcnet/steady.hpp"
#include "mcnet/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mcnet;

namespace {

py::dict steady_dict(const SteadyState& s) {
  py::dict d;
  d["p_bar"] = s.p_bar.p();
  d["residual"] = s.residual;
  d["method"] = to_string(s.method);
  d["iterations"] = s.iterations;
  d["fallback"] = s.fallback_log;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interacting two-state Markov chains on weighted networks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init<Matrix>(), py::arg("weights"))
      .def_static(
          "from_edges",
          [](Index n, const std::vector<std::tuple<Index, Index, double>>& edges) {
            std::vector<Edge> es;
            for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
            return WeightedGraph::from_edges(n, es);
          },
          py::arg("n"), py::arg("edges"))
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def_static("load", &load_graph_file, py::arg("path"))
      .def_static("cycle", &cycle_graph)
      .def_static("path", &path_graph)
      .def_static("star", &star_graph)
      .def_static("complete", &complete_graph)
      .def_static("circulant", &circulant_regular, py::arg("n"), py::arg("d"))
      .def_property_readonly("size", &WeightedGraph::size)
      .def_property_readonly("weights", &WeightedGraph::weights)
      .def_property_readonly("degrees", &WeightedGraph::degrees)
      .def("laplacian", [](const WeightedGraph& g) { return laplacian(g).laplacian; })
      .def("is_connected", [](const WeightedGraph& g) { return is_connected(g); })
      .def("lambda_1", [](const WeightedGraph& g) { return lambda_1(g); })
      .def("to_text", [](const WeightedGraph& g) { return format_graph(g); });

  py::class_<ChainParams>(m, "Params")
      .def(py::init([](Vector alpha, Vector beta, double g01, double g10) {
             return ChainParams{std::move(alpha), std::move(beta), g01, g10};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma01"), py::arg("gamma10"))
      .def_static("uniform", &ChainParams::uniform, py::arg("n"), py::arg("alpha"),
                  py::arg("beta"), py::arg("gamma01"), py::arg("gamma10"))
      .def_static("parse", [](const std::string& text, Index n) { return parse_params(text, n); })
      .def_readwrite("alpha", &ChainParams::alpha)
      .def_readwrite("beta", &ChainParams::beta)
      .def_readwrite("gamma01", &ChainParams::gamma01)
      .def_readwrite("gamma10", &ChainParams::gamma10)
      .def_property_readonly("gamma_hat", &ChainParams::gamma_hat)
      .def("irreducible", &ChainParams::irreducible);

  m.def(
      "vector_field",
      [](const WeightedGraph& g, const ChainParams& c, const Vector& p) {
        return vector_field_w(g, c, StateVector(p));
      },
      py::arg("graph"), py::arg("params"), py::arg("p"));
  m.def(
      "vector_field_laplacian",
      [](const WeightedGraph& g, const ChainParams& c, const Vector& p) {
        return vector_field_laplacian(g, c, StateVector(p));
      },
      py::arg("graph"), py::arg("params"), py::arg("p"));
  m.def(
      "jacobian",
      [](const WeightedGraph& g, const ChainParams& c, const Vector& p) {
        return jacobian(g, c, StateVector(p));
      },
      py::arg("graph"), py::arg("params"), py::arg("p"));

  m.def(
      "integrate",
      [](const WeightedGraph& g, const ChainParams& c, const Vector& p0, double t_end, double dt,
         std::size_t record_every, std::optional<Vector> reference) {
        std::optional<StateVector> ref;
        if (reference) ref = StateVector(*reference);
        const Trajectory tr = integrate(g, c, StateVector(p0), {dt, t_end, record_every}, ref);
        Matrix states(static_cast<Index>(tr.size()), g.size());
        for (std::size_t k = 0; k < tr.size(); ++k) states.row(static_cast<Index>(k)) = tr.states[k].p();
        py::dict d;
        d["t"] = tr.times;
        d["p"] = states;
        d["residual"] = tr.residuals;
        d["entropy"] = tr.entropies;
        d["clamp_events"] = tr.clamp_events;
        return d;
      },
      py::arg("graph"), py::arg("params"), py::arg("p0"), py::arg("t_end"), py::arg("dt") = 1e-3,
      py::arg("record_every") = 1, py::arg("reference") = py::none());

  m.def(
      "steady",
      [](const WeightedGraph& g, const ChainParams& c, const std::string& method, double tol) {
        SolveOptions o;
        o.tol = tol;
        return steady_dict(solve_steady(g, c, steady_method_from_string(method), o));
      },
      py::arg("graph"), py::arg("params"), py::arg("method") = "auto", py::arg("tol") = 1e-10);
  m.def(
      "steady_report",
      [](const WeightedGraph& g, const ChainParams& c, const std::string& method, double tol) {
        SolveOptions o;
        o.tol = tol;
        return dump_json(steady_report(g, c, solve_steady(g, c, steady_method_from_string(method), o)));
      },
      py::arg("graph"), py::arg("params"), py::arg("method") = "auto", py::arg("tol") = 1e-10);

  m.def(
      "relative_entropy",
      [](const Vector& p, const Vector& p_bar) {
        return relative_entropy(StateVector(p), StateVector(p_bar));
      },
      py::arg("p"), py::arg("p_bar"));
  m.def(
      "entropy_rate",
      [](const WeightedGraph& g, const ChainParams& c, const Vector& p, const Vector& p_bar) {
        return entropy_rate(g, c, StateVector(p), StateVector(p_bar));
      },
      py::arg("graph"), py::arg("params"), py::arg("p"), py::arg("p_bar"));
  m.def(
      "descent_bound",
      [](const ChainParams& c, const Vector& p, const Vector& p_bar) {
        return descent_margin(c, StateVector(p), StateVector(p_bar)).bound();
      },
      py::arg("params"), py::arg("p"), py::arg("p_bar"));
  m.def(
      "lemma31_quantity",
      [](const WeightedGraph& g, const Vector& x, const Vector& y) {
        return lemma31_quantity(laplacian(g), x, y);
      },
      py::arg("graph"), py::arg("x"), py::arg("y"));
  m.def(
      "lemma42_quantity",
      [](const WeightedGraph& g, const Vector& x) { return lemma42_quantity(laplacian(g), x); },
      py::arg("graph"), py::arg("x"));

  m.def("homogeneous_closed_form", &homogeneous_closed_form, py::arg("alpha"), py::arg("beta"),
        py::arg("gamma_hat"), py::arg("d"));
  m.def("sis_equilibrium", &sis_equilibrium, py::arg("beta"), py::arg("gamma"), py::arg("d"));
  m.def(
      "variance_bound",
      [](const WeightedGraph& g, const ChainParams& c) {
        const VarianceBoundReport r = variance_bound(g, c);
        py::dict d;
        d["variance"] = r.variance;
        d["bound"] = r.bound;
        d["lambda1"] = r.lambda1;
        d["p_bar"] = r.steady.p_bar.p();
        return d;
      },
      py::arg("graph"), py::arg("params"));

  m.def(
      "embed", [](const Vector& p) { return embed(StateVector(p)).probs; }, py::arg("p"));
  m.def(
      "hypercube_relative_entropy",
      [](const Vector& p, const Vector& p_bar) {
        return hypercube_relative_entropy(embed(StateVector(p)), embed(StateVector(p_bar)));
      },
      py::arg("p"), py::arg("p_bar"));

  m.def(
      "verify_json",
      [](const std::string& suite, std::size_t trials, std::uint64_t seed) {
        VerifyConfig cfg;
        cfg.suite = suite;
        cfg.trials = trials;
        cfg.seed = seed;
        return dump_json(run_verify(cfg).report);
      },
      py::arg("suite") = "all", py::arg("trials") = 100, py::arg("seed") = 0);
}
