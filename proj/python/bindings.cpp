#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chipfire/assignment.hpp"
#include "chipfire/bipartite.hpp"
#include "chipfire/sweep.hpp"

namespace py = pybind11;
using namespace chipfire;

namespace {

ChipConfig to_config(const std::vector<Chips>& values) { return ChipConfig(values); }

std::vector<Chips> to_list(const ChipConfig& c) { return c.values(); }

py::tuple rational(const Rational& r) { return py::make_tuple(r.numerator(), r.denominator()); }

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

CycleOptions cycle_options(std::uint64_t max_rounds, bool low_memory) {
  return CycleOptions{max_rounds, low_memory};
}

}  // namespace

PYBIND11_MODULE(_chipfire, m) {
  m.doc() = "Parallel chip-firing games";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<Falsification>(m, "Falsification", PyExc_AssertionError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<std::pair<Vertex, Vertex>>>(), py::arg("n"), py::arg("edges"))
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def_static("generate",
                  [](const std::string& kind, const std::vector<long long>& params) {
                    return generate(kind, params);
                  },
                  py::arg("kind"), py::arg("params"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::pair<Vertex, Vertex>> out;
                               for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             auto nb = g.neighbors(v);
             return std::vector<Vertex>(nb.begin(), nb.end());
           })
      .def("to_text", &Graph::to_text)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("enumerate_connected", &enumerate_connected, py::arg("n"), py::arg("dedup") = true,
        py::arg("max_n") = kDefaultEnumerationLimit);
  m.def("canonical_code", &canonical_code);

  m.def("step", [](const Graph& g, const std::vector<Chips>& sigma) {
    const ChipConfig c = to_config(sigma);
    check_config(g, c);
    return to_list(step(g, c));
  });

  m.def(
      "find_cycle",
      [](const Graph& g, const std::vector<Chips>& sigma, std::uint64_t max_rounds, bool low_memory) {
        const CycleSummary s = find_cycle(g, to_config(sigma), cycle_options(max_rounds, low_memory));
        std::vector<std::vector<Chips>> cycle;
        for (const ChipConfig& c : s.cycle) cycle.push_back(to_list(c));
        std::vector<std::string> words;
        for (Vertex v = 0; v < g.num_vertices(); ++v) words.push_back(firing_sequence(s, v).word);
        py::dict out;
        out["transient"] = s.transient;
        out["period"] = s.period;
        out["cycle"] = cycle;
        out["firing"] = words;
        out["activity"] = rational(activity(s));
        out["compliant"] = is_compliant(s, g);
        return out;
      },
      py::arg("graph"), py::arg("sigma"), py::arg("max_rounds") = CycleOptions{}.max_rounds,
      py::arg("low_memory") = false);

  m.def("complement", [](const Graph& g, const std::vector<Chips>& sigma) {
    return to_list(complement(g, to_config(sigma)));
  });

  m.def("assignment", [](const Graph& g, const std::vector<Chips>& sigma) {
    const CycleSummary s = find_cycle(g, to_config(sigma));
    if (!is_compliant(s, g)) throw InputError("game is not compliant");
    const ChipAssignment a = build_assignment(g, s);
    return json_to_py(assignment_json(g, a, track_chips(g, s, a)));
  });

  m.def(
      "conjugate",
      [](const Graph& g, const std::vector<Chips>& sigma, int j) {
        return to_list(conjugate(sorted_sides(g, to_config(sigma)), j).config);
      },
      py::arg("graph"), py::arg("sigma"), py::arg("j"));

  m.def(
      "verify",
      [](const std::string& claim, int n_max, int workers) {
        VerificationReport r;
        py::gil_scoped_release release;
        const std::vector<Graph> graphs = small_graphs(n_max);
        RangeOptions options;
        options.sweep.workers = workers;
        if (claim == "theorem1") {
          r = verify_range(RangeClaim::kTheorem1, graphs, options);
        } else if (claim == "conjecture1") {
          r = verify_range(RangeClaim::kConjecture1, graphs, options);
        } else if (claim == "stabilization") {
          r = verify_range(RangeClaim::kStabilization, graphs, options);
        } else if (claim == "lemmas") {
          r = verify_assignment_sweep(graphs, options.sweep);
        } else {
          throw InputError("unknown claim '" + claim + "'");
        }
        py::gil_scoped_acquire gil;
        return json_to_py(r.to_json());
      },
      py::arg("claim"), py::arg("n_max") = 4, py::arg("workers") = 1);

  m.def(
      "verify_theorem2",
      [](int a, const std::string& mode, std::size_t samples, std::uint64_t seed, int workers) {
        py::gil_scoped_release release;
        Theorem2Options options;
        options.mode = mode == "sample" ? SweepMode::kSample : SweepMode::kExhaustive;
        options.samples = samples;
        options.seed = seed;
        options.sweep.workers = workers;
        const VerificationReport r = verify_theorem2(a, options);
        py::gil_scoped_acquire gil;
        return json_to_py(r.to_json());
      },
      py::arg("a"), py::arg("mode") = "exhaustive", py::arg("samples") = 100'000, py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "staircase",
      [](const Graph& g, std::size_t samples, std::uint64_t seed, std::uint64_t transient_cap, int workers) {
        return staircase(g, samples, seed, transient_cap, workers).to_csv();
      },
      py::arg("graph"), py::arg("samples") = 50, py::arg("seed") = 1, py::arg("transient_cap") = 100'000,
      py::arg("workers") = 1);
}
