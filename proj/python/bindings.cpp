#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coarsetree/commands.hpp"
#include "coarsetree/error.hpp"
#include "coarsetree/free_group.hpp"
#include "coarsetree/hyperbolicity.hpp"
#include "coarsetree/scene_io.hpp"
#include "coarsetree/tree_of_spaces.hpp"

namespace py = pybind11;
using namespace coarsetree;

namespace {

std::vector<std::vector<double>> to_rows(const DistanceMatrix& d) {
  std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j) out[i][j] = d(i, j);
  return out;
}

std::vector<std::string> words(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format_word(w));
  return out;
}

FreeGroupAutomorphism automorphism(const std::vector<std::string>& images, const std::vector<std::string>& inverse) {
  return make_automorphism(static_cast<int>(images.size()), images, inverse);
}

}  // namespace

PYBIND11_MODULE(_coarsetree, m) {
  m.doc() = "coarse geometry of trees of metric graphs";
  m.attr("SCENE_SCHEMA_VERSION") = kSceneSchemaVersion;
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<MetricGraph>(m, "MetricGraph")
      .def(py::init<>())
      .def(py::init<int>(), py::arg("n"))
      .def("add_vertex", &MetricGraph::add_vertex, py::arg("label") = "")
      .def("add_edge", &MetricGraph::add_edge, py::arg("a"), py::arg("b"), py::arg("w") = 1.0)
      .def("size", &MetricGraph::size)
      .def("__len__", &MetricGraph::size)
      .def("label", &MetricGraph::label)
      .def("find_label", &MetricGraph::find_label)
      .def("connected", &MetricGraph::connected)
      .def("edges", [](const MetricGraph& g) {
        std::vector<std::tuple<Vid, Vid, double>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.a, e.b, e.w);
        return out;
      });

  m.def("path_graph", &path_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("cycle_graph", &cycle_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("grid_graph", &grid_graph, py::arg("rows"), py::arg("cols"));
  m.def("cayley_ball", &cayley_ball, py::arg("rank"), py::arg("radius"));

  m.def("distances", [](const MetricGraph& g) { return to_rows(shortest_path_metric(g, true)); }, py::arg("graph"));
  m.def(
      "geodesic",
      [](const MetricGraph& g, Vid u, Vid v) {
        auto p = canonical_geodesic(g, shortest_path_metric(g), u, v);
        return py::make_tuple(p.vertices, p.length);
      },
      py::arg("graph"), py::arg("u"), py::arg("v"));
  m.def(
      "gromov_product",
      [](const MetricGraph& g, Vid y, Vid z, Vid x) { return gromov_product(shortest_path_metric(g), y, z, x); },
      py::arg("graph"), py::arg("y"), py::arg("z"), py::arg("x"));
  m.def(
      "delta",
      [](const MetricGraph& g, const std::string& mode, std::uint64_t cap) {
        auto r = delta_hyperbolicity(g, shortest_path_metric(g), delta_mode_from_string(mode), cap);
        py::dict out;
        out["mode"] = to_string(r.mode);
        out["delta"] = r.delta;
        out["witness"] = std::vector<Vid>(r.witness.begin(), r.witness.end());
        return out;
      },
      py::arg("graph"), py::arg("mode") = "four_point", py::arg("geodesic_cap") = 0);

  m.def(
      "k0",
      [](double lambda0p, double delta0p, double L0p) {
        auto k = k0_formula(lambda0p, delta0p, L0p);
        return py::make_tuple(static_cast<double>(k.value), k.exact);
      },
      py::arg("lambda0p"), py::arg("delta0p"), py::arg("L0p"));

  m.def(
      "weak_hyperbolicity_test",
      [](const std::vector<std::string>& images, const std::vector<std::string>& inverse, int mm, double lambda,
         int ball, int exceptional) {
        auto r = weak_hyperbolicity_test(automorphism(images, inverse), mm, lambda, ball, exceptional);
        py::dict out;
        out["pass"] = r.pass;
        out["checked"] = r.checked;
        out["violators"] = words(r.violators);
        return out;
      },
      py::arg("images"), py::arg("inverse"), py::arg("m"), py::arg("lambda_"), py::arg("ball"),
      py::arg("exceptional"));
  m.def(
      "pseudo_orbit",
      [](const std::vector<std::string>& images, const std::vector<std::string>& inverse, const std::string& h0,
         int K, int steps) {
        auto r = automorphism_pseudo_orbit(automorphism(images, inverse), parse_word(h0), K, steps);
        return py::make_tuple(words(r.terms), r.lengths);
      },
      py::arg("images"), py::arg("inverse"), py::arg("h0"), py::arg("K"), py::arg("steps"));

  py::class_<Scene>(m, "Scene")
      .def_readonly("name", &Scene::name)
      .def_readonly("hash", &Scene::hash)
      .def_readonly("schema_version", &Scene::schema_version)
      .def_property_readonly("graphs",
                             [](const Scene& s) {
                               std::vector<std::string> out;
                               for (const auto& [k, v] : s.graphs) out.push_back(k);
                               return out;
                             })
      .def_property_readonly("param_sets", [](const Scene& s) {
        std::vector<std::string> out;
        for (const auto& [k, v] : s.params) out.push_back(k);
        return out;
      });
  m.def("load_scene", &load_scene, py::arg("path"));
  m.def("parse_scene", [](const std::string& text) { return parse_scene(json::parse(text)); }, py::arg("text"));
  m.def("command_names", &command_names);
  m.def(
      "run_command",
      [](const std::string& command, const Scene& scene, const std::string& params, std::uint64_t seed,
         const std::string& format) {
        auto r = run_command(command, scene, resolve_params(scene, params), seed);
        return py::make_tuple(emit(r, format), r.exit_code());
      },
      py::arg("command"), py::arg("scene"), py::arg("params") = "{}", py::arg("seed") = 1,
      py::arg("format") = "json");
}
