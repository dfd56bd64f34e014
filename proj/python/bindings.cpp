// Python bindings. Vertex ids are 0-based; unreachable distances are None.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sepshort/division.hpp"
#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"
#include "sepshort/pipeline.hpp"
#include "sepshort/separator.hpp"
#include "sepshort/sssp.hpp"

namespace py = pybind11;
using namespace sepshort;

namespace {

std::vector<std::optional<Weight>> to_py(const std::vector<Weight>& d) {
  std::vector<std::optional<Weight>> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != kInf) out[i] = d[i];
  }
  return out;
}

DiGraph make_graph(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Weight>>& arcs) {
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const auto& [u, v, w] : arcs) edges.push_back({u, v, w});
  return DiGraph(n, std::move(edges));
}

PipelineConfig config(const std::string& engine, std::optional<double> gamma,
                      std::optional<std::size_t> r) {
  PipelineConfig cfg;
  cfg.engine = parse_engine(engine);
  if (gamma) cfg.gamma = *gamma;
  cfg.r_override = r;
  cfg.validate();
  return cfg;
}

struct Solution {
  DiGraph graph;
  PipelineResult result;

  std::vector<std::optional<Weight>> dist() const { return to_py(result.sssp.dist); }
  std::vector<EdgeId> path(Vertex v) const { return extract_path(graph, result, v); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-source shortest paths with negative lengths on sparse graphs";

  // Exception types live for the life of the interpreter.
  static const py::handle base = py::exception<Error>(m, "Error", PyExc_RuntimeError).release();
  static const py::handle parse_error =
      py::exception<ParseError>(m, "ParseError", base).release();
  static const py::handle cycle = py::exception<NegativeCycle>(m, "NegativeCycle", base).release();
  static const py::handle budget = py::exception<BudgetUnmet>(m, "BudgetUnmet", base).release();
  static const py::handle unreachable =
      py::exception<Unreachable>(m, "Unreachable", base).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NegativeCycle& e) {
      py::object inst = cycle(e.what());
      inst.attr("vertices") = py::cast(e.vertices());
      inst.attr("edges") = py::cast(e.edges());
      PyErr_SetObject(cycle.ptr(), inst.ptr());
    } catch (const ParseError& e) {
      py::object inst = parse_error(e.what());
      inst.attr("line") = py::cast(e.line());
      PyErr_SetObject(parse_error.ptr(), inst.ptr());
    } catch (const BudgetUnmet& e) {
      py::set_error(budget, e.what());
    } catch (const Unreachable& e) {
      py::set_error(unreachable, e.what());
    } catch (const ValidationError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const GenerationError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<DiGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("arcs"),
           "Graph on n vertices from (tail, head, length) triples.")
      .def_property_readonly("n", &DiGraph::num_vertices)
      .def_property_readonly("m", &DiGraph::num_edges)
      .def("arcs",
           [](const DiGraph& g) {
             std::vector<std::tuple<Vertex, Vertex, Weight>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.tail, e.head, e.length);
             return out;
           })
      .def("to_dimacs", [](const DiGraph& g) { return save_dimacs(g); })
      .def("__repr__", [](const DiGraph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("load_dimacs", [](const std::string& text) { return load_dimacs(text); }, py::arg("text"));
  m.def("load_dimacs_file", &load_dimacs_file, py::arg("path"));
  m.def("generate", &generate, py::arg("spec"), py::arg("seed") = 1,
        "Graph from a generator spec such as 'grid:10x10:negpot=0..9/5,nnc'.");
  m.def("plant_negative_cycle", &plant_negative_cycle, py::arg("graph"), py::arg("source"),
        py::arg("seed") = 1);

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("source", [](const Solution& s) { return s.result.sssp.source; })
      .def_property_readonly("dist", &Solution::dist)
      .def_property_readonly("r", [](const Solution& s) { return s.result.prep->r; })
      .def_property_readonly("regions",
                             [](const Solution& s) { return s.result.prep->division.regions.size(); })
      .def_property_readonly("times",
                             [](const Solution& s) {
                               const StageTimes& t = s.result.times;
                               py::dict d;
                               d["divide_ms"] = t.divide_ms;
                               d["skeleton_ms"] = t.skeleton_ms;
                               d["replaced_ms"] = t.replaced_ms;
                               d["internal_ms"] = t.internal_ms;
                               d["total_ms"] = t.total_ms;
                               return d;
                             })
      .def("path", &Solution::path, py::arg("v"), "Edge ids of a shortest path to v.");

  m.def(
      "solve",
      [](const DiGraph& g, Vertex source, const std::string& engine, std::optional<double> gamma,
         std::optional<std::size_t> r) {
        if (source < 0 || static_cast<std::size_t>(source) >= g.num_vertices()) {
          throw py::index_error("source out of range");
        }
        const PipelineConfig cfg = config(engine, gamma, r);
        py::gil_scoped_release release;
        return Solution{g, solve_sssp(g, source, cfg)};
      },
      py::arg("graph"), py::arg("source"), py::arg("engine") = "scaling",
      py::arg("gamma") = py::none(), py::arg("r") = py::none());

  m.def(
      "solve_multi",
      [](const DiGraph& g, const std::vector<Vertex>& sources, const std::string& engine) {
        const PipelineConfig cfg = config(engine, std::nullopt, std::nullopt);
        std::vector<Solution> out;
        for (PipelineResult& r : solve_multi(g, sources, cfg)) out.push_back({g, std::move(r)});
        return out;
      },
      py::arg("graph"), py::arg("sources"), py::arg("engine") = "scaling");

  m.def(
      "bellman_ford", [](const DiGraph& g, Vertex s) { return to_py(bellman_ford(g, s).dist); },
      py::arg("graph"), py::arg("source"));
  m.def(
      "dijkstra", [](const DiGraph& g, Vertex s) { return to_py(dijkstra(g, s).dist); },
      py::arg("graph"), py::arg("source"));

  m.def(
      "divide",
      [](const DiGraph& g, std::optional<std::size_t> r) {
        PipelineConfig cfg;
        cfg.r_override = r;
        const ChosenParams cp = choose_params(g.num_vertices(), cfg);
        const Division d = build_division(g, cfg.division_params(cp.r));
        py::dict out;
        out["r"] = d.r;
        out["ok"] = verify_division(g, d).ok();
        py::list regions;
        for (const Region& reg : d.regions) {
          py::dict rd;
          rd["vertices"] = reg.vertices;
          rd["boundary"] = reg.boundary;
          rd["edges"] = reg.edge_ids;
          regions.append(rd);
        }
        out["regions"] = regions;
        return out;
      },
      py::arg("graph"), py::arg("r") = py::none());

  m.def("default_gamma", &default_gamma);
}
