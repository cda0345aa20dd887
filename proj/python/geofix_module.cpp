#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "geofix/errors.hpp"
#include "geofix/runner.hpp"

namespace py = pybind11;
using namespace geofix;

namespace {

json parse(const std::string& text) { return json::parse(text); }

py::dict projection_dict(const Space& space, const ProjectionReport& rep) {
  py::dict d;
  d["projected"] = rep.projected;
  d["dist"] = rep.dist_to_set;
  d["iterations"] = rep.iterations_used;
  (void)space;
  return d;
}

}  // namespace

PYBIND11_MODULE(_geofix, m) {
  m.doc() = "geodesic fixed-point toolkit";

  py::class_<VecPoint>(m, "VecPoint")
      .def_readonly("coords", &VecPoint::x)
      .def("__repr__",
           [](const VecPoint& p) { return canonical_dump(point_to_json(Point(p))); });
  py::class_<DiskPoint>(m, "DiskPoint")
      .def_readonly("u", &DiskPoint::u)
      .def_readonly("v", &DiskPoint::v)
      .def("__repr__",
           [](const DiskPoint& p) { return canonical_dump(point_to_json(Point(p))); });
  py::class_<TreePoint>(m, "TreePoint")
      .def_readonly("edge", &TreePoint::edge)
      .def_readonly("offset", &TreePoint::offset)
      .def("__repr__",
           [](const TreePoint& p) { return canonical_dump(point_to_json(Point(p))); });

  py::class_<Space>(m, "Space")
      .def_static("euclidean", &Space::euclidean, py::arg("dim"))
      .def_static("poincare_disk", &Space::poincare_disk)
      .def_static("lp", &Space::lp, py::arg("p"), py::arg("dim"))
      .def_static("metric_tree",
                  [](const std::string& tree_json) {
                    return Space::metric_tree(tree_from_json(parse(tree_json)));
                  })
      .def("describe", &Space::describe)
      .def("tol", &Space::tol)
      .def("distance", &Space::distance)
      .def("convex_combination", &Space::convex_combination)
      .def("modulus_eval", &Space::modulus_eval, py::arg("r"), py::arg("eps"));

  m.def("parse_space", &parse_space_spec);
  m.def("vec_point", [](std::vector<double> coords) { return vec_point(std::move(coords)); });
  m.def("disk_point", &disk_point);
  m.def("tree_point", &tree_point);
  m.def("point_json", [](const Point& p) { return canonical_dump(point_to_json(p)); });

  m.def("project", [](const Space& space, const std::string& set_json, const Point& x) {
    return projection_dict(space, project(space, set_from_json(space, parse(set_json)), x));
  });
  m.def("membership", [](const Space& space, const std::string& set_json, const Point& x, double tol) {
    return membership(space, set_from_json(space, parse(set_json)), x, tol);
  });
  m.def("apply_mapping", [](const Space& space, const std::string& mapping_json, const Point& x) {
    return apply(space, mapping_from_json(space, parse(mapping_json)), x);
  });

  py::class_<OrbitTrace>(m, "OrbitTrace")
      .def_property_readonly("gaps", [](const OrbitTrace& t) { return t.gaps; })
      .def_property_readonly("reached", [](const OrbitTrace& t) { return t.reached; })
      .def_property_readonly("scheme", [](const OrbitTrace& t) { return scheme_name(t.scheme); })
      .def("last_point", [](const OrbitTrace& t) { return t.points.back(); })
      .def("regularity_index",
           [](const OrbitTrace& t, double eps) -> std::optional<std::int64_t> {
             return regularity_index(t, eps);
           })
      .def("minimal_displacement", [](const OrbitTrace& t) { return minimal_displacement_estimate(t); });

  m.def("picard_orbit",
        [](const Space& space, const std::string& mapping_json, const Point& x0, std::int64_t n_max,
           double eps_stop) {
          return picard_orbit(space, mapping_from_json(space, parse(mapping_json)), x0, n_max,
                              eps_stop);
        },
        py::arg("space"), py::arg("mapping_json"), py::arg("x0"), py::arg("n_max") = 1000,
        py::arg("eps_stop") = 0.0);
  m.def("alternating_projections",
        [](const Space& space, const std::string& a_json, const std::string& b_json, const Point& x0,
           std::int64_t n_max, double eps_stop) {
          return alternating_projections(space, set_from_json(space, parse(a_json)),
                                         set_from_json(space, parse(b_json)), x0, n_max, eps_stop);
        },
        py::arg("space"), py::arg("a_json"), py::arg("b_json"), py::arg("x0"),
        py::arg("n_max") = 1000, py::arg("eps_stop") = 0.0);

  m.def("asymptotic_center", [](const Space& space, const OrbitTrace& trace, double step) {
    auto tail = trace_tail(trace);
    CenterSearch search;
    search.step = step;
    auto res = asymptotic_center(space, tail, search);
    py::dict d;
    d["center"] = res.center;
    d["radius"] = res.radius;
    return d;
  });

  m.def("rate_ap", [](double eps, double b) { return ap_rate(eps, b).str(); });
  m.def("rate_averaged",
        [](double eps, double b, double lambda) { return averaged_rate(eps, b, lambda).str(); });
  m.def("rate_firmly",
        [](double eps, double b, double lambda) { return firmly_rate(eps, b, lambda).str(); });
  m.def("rate_parallel", [](double eps, double b, std::vector<double> lambdas,
                            std::vector<double> alphas) {
    return parallel_rate(eps, b, cat0_modulus(), lambdas, alphas).str();
  });
  m.def("rate_parallel_refined", [](double eps, double b, std::vector<double> lambdas,
                                    std::vector<double> alphas) {
    return parallel_rate_refined(eps, b, cat0_modulus_tilde(), lambdas, alphas).str();
  });

  m.def("check_property", [](const Space& space, const std::string& name, int n, std::uint64_t seed) {
    auto prop = parse_property(name);
    if (!prop) throw ConfigError("unknown property: " + name);
    auto rep = run_check(space, *prop, n, seed);
    py::dict d;
    d["property"] = property_name(rep.property);
    d["passed"] = rep.passed;
    d["max_violation"] = rep.max_violation;
    d["samples"] = rep.samples_tested;
    return d;
  });

  m.def("run_config", [](const std::string& config_json, const std::string& out_dir) {
    RunConfig cfg = parse_run_config(parse(config_json));
    RunOutcome out = execute_run(cfg);
    write_run_outputs(out, out_dir);
    py::dict d;
    d["digest"] = out.digest;
    d["certificates_pass"] = out.certificates_pass;
    d["gaps"] = out.trace.gaps.size();
    return d;
  });

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedCapability>(m, "UnsupportedCapability", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailureError", PyExc_ArithmeticError);
}
