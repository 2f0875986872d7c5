#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carousel/harness/fuzz.hpp"
#include "carousel/harness/reports.hpp"
#include "carousel/harness/svg.hpp"

namespace py = pybind11;
using namespace carousel;

namespace {

std::pair<int, std::string> run_report(const harness::RunOutcome& r) { return {r.exit_code, r.report.dump(2) + "\n"}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Witness search and containment tests for circles in triangles";

  py::register_exception<Error>(m, "CarouselError", PyExc_ValueError);

  py::class_<Point2>(m, "Point2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def(py::init([](const std::pair<double, double>& t) { return Point2{t.first, t.second}; }))
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y)
      .def("__iter__", [](const Point2& p) { return py::iter(py::make_tuple(p.x, p.y)); })
      .def("__eq__", [](const Point2& a, const Point2& b) { return a == b; })
      .def("__repr__", [](const Point2& p) { return "Point2(" + py::repr(py::float_(p.x)).cast<std::string>() + ", " + py::repr(py::float_(p.y)).cast<std::string>() + ")"; });
  py::implicitly_convertible<py::tuple, Point2>();

  py::class_<Circle2>(m, "Circle2")
      .def(py::init([](Point2 c, double r) { return Circle2{c, r}; }), py::arg("center"), py::arg("radius") = 0.0)
      .def_readwrite("center", &Circle2::center)
      .def_readwrite("radius", &Circle2::radius)
      .def("__repr__", [](const Circle2& c) {
        return "Circle2((" + std::to_string(c.center.x) + ", " + std::to_string(c.center.y) + "), " +
               std::to_string(c.radius) + ")";
      });

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init([](double g, double d) {
             Tolerance t{g, d};
             t.validate();
             return t;
           }),
           py::arg("eps_geom") = 1e-9, py::arg("eps_decision") = 1e-6)
      .def_readonly("eps_geom", &Tolerance::eps_geom)
      .def_readonly("eps_decision", &Tolerance::eps_decision);

  py::class_<ContainmentResult>(m, "ContainmentResult")
      .def_readonly("contained", &ContainmentResult::contained)
      .def_readonly("slack", &ContainmentResult::slack)
      .def_readonly("witness_direction", &ContainmentResult::witness_direction)
      .def_readonly("argmin_direction", &ContainmentResult::argmin_direction)
      .def_readonly("arc_cover_complete", &ContainmentResult::arc_cover_complete)
      .def_property_readonly("uncovered", [](const ContainmentResult& r) {
        std::vector<std::pair<double, double>> out;
        for (const auto& g : r.uncovered) out.emplace_back(g.lo, g.hi);
        return out;
      });

  m.def("support", [](const std::vector<Circle2>& gens, double theta) { return support(GeneratorSet(gens), theta); },
        py::arg("gens"), py::arg("theta"));
  m.def("circle_in_hull",
        [](const Circle2& target, const std::vector<Circle2>& gens, const Tolerance& tol) {
          return circle_in_hull(target, GeneratorSet(gens), tol);
        },
        py::arg("target"), py::arg("gens"), py::arg("tol") = Tolerance{});
  m.def("tangent_points_from_point", &tangent_points_from_point, py::arg("focus"), py::arg("circle"),
        py::arg("tol") = Tolerance{});
  m.def("external_homothety_center", &external_homothety_center, py::arg("c1"), py::arg("c2"));
  m.def("reangle_contains", &reangle_contains, py::arg("focus"), py::arg("circle"), py::arg("x"));

  m.def("hull_boundary",
        [](const std::vector<Circle2>& gens, const Tolerance& tol) {
          const HullBoundary hb = hull_boundary(GeneratorSet(gens), tol);
          py::list pieces;
          for (const HullPiece& p : hb.pieces) {
            py::dict d;
            d["kind"] = p.kind == HullPiece::Kind::Arc ? "arc" : "segment";
            d["from"] = p.from;
            d["to"] = p.to;
            d["begin"] = p.begin;
            d["end"] = p.end;
            d["theta_begin"] = p.theta_begin;
            d["theta_end"] = p.theta_end;
            pieces.append(d);
          }
          py::dict out;
          out["pieces"] = pieces;
          out["omitted"] = hb.omitted;
          out["area"] = hb.area();
          return out;
        },
        py::arg("gens"), py::arg("tol") = Tolerance{});

  py::class_<CarouselInstance>(m, "CarouselInstance")
      .def(py::init([](const std::array<Point2, 3>& sites, const std::array<Circle2, 2>& u) {
             return CarouselInstance{sites, u};
           }),
           py::arg("sites"), py::arg("circles"))
      .def_readonly("sites", &CarouselInstance::sites)
      .def_readonly("circles", &CarouselInstance::u);

  py::class_<Witness>(m, "Witness")
      .def_readonly("j", &Witness::j)
      .def_readonly("k", &Witness::k)
      .def_readonly("slack", &Witness::slack)
      .def("__repr__", [](const Witness& w) {
        return "Witness(j=" + std::to_string(w.j) + ", k=" + std::to_string(w.k) + ", slack=" + std::to_string(w.slack) + ")";
      });

  py::enum_<Tangency>(m, "Tangency")
      .value("NONE_AT_ONE", Tangency::NoneAtOne)
      .value("NONE_AT_ZERO", Tangency::NoneAtZero)
      .value("LEG", Tangency::Leg)
      .value("FRONT_ARC", Tangency::FrontArc)
      .value("BASE_SIDE", Tangency::BaseSide);

  py::class_<XiSweepReport>(m, "XiSweepReport")
      .def_readonly("j", &XiSweepReport::j)
      .def_readonly("k", &XiSweepReport::k)
      .def_readonly("xi_star", &XiSweepReport::xi_star)
      .def_readonly("slack_at_xi_star", &XiSweepReport::slack_at_xi_star)
      .def_readonly("tangency", &XiSweepReport::tangency);

  m.def("validate_instance", &validate_instance, py::arg("inst"), py::arg("tol") = Tolerance{});
  m.def("witness_search", &witness_search, py::arg("inst"), py::arg("tol") = Tolerance{});
  m.def("corollary_witness_search", &corollary_witness_search, py::arg("generators"), py::arg("circles"),
        py::arg("tol") = Tolerance{});
  m.def("two_carousel_points", &two_carousel_points, py::arg("sites"), py::arg("b0"), py::arg("b1"),
        py::arg("tol") = Tolerance{});
  m.def("sweep_slack", &sweep_slack, py::arg("inst"), py::arg("j"), py::arg("k"), py::arg("zeta"));
  m.def("xi_sweep_fixed", &xi_sweep_fixed, py::arg("inst"), py::arg("j"), py::arg("k"), py::arg("tol") = 1e-9,
        py::arg("eps") = Tolerance{});
  m.def("random_instance", [](std::uint64_t seed) { return random_instance(seed); }, py::arg("seed"));

  m.def("check_scenario",
        [](const std::string& text) {
          try {
            return run_report(harness::run_scenario(harness::parse_scenario(text)));
          } catch (const Error& e) {
            return run_report(harness::error_outcome("check", e));
          }
        },
        py::arg("text"), "Run a scenario given as JSON text; returns (exit_code, report_json).");
  m.def("repro3d",
        [](const std::string& example, int t, std::optional<double> r, double side, double factor) {
          harness::Repro3dRequest req;
          req.example = example;
          req.t = t;
          req.r = r;
          req.side = side;
          req.arc_radius_factor = factor;
          return run_report(harness::run_repro3d(req));
        },
        py::arg("example") = "4.1", py::arg("t") = 3, py::arg("r") = std::nullopt, py::arg("side") = 1.0,
        py::arg("factor") = 10.0);
  m.def("fuzz",
        [](const std::string& kind, std::size_t n, std::uint64_t seed) {
          const auto k = harness::parse_fuzz_kind(kind);
          if (!k) throw Error(ErrorCode::InvalidArgument, "unknown fuzz kind " + kind);
          harness::FuzzOptions opts;
          opts.kind = *k;
          opts.n = n;
          opts.seed = seed;
          py::gil_scoped_release release;
          return run_report(harness::fuzz_outcome(harness::run_fuzz(opts)));
        },
        py::arg("kind") = "theorem2d", py::arg("n") = 100, py::arg("seed") = 0);
  m.def("render_svg", [](const std::string& text) { return harness::render_svg(harness::parse_scenario(text)); },
        py::arg("text"));
  m.attr("__version__") = std::string(harness::kToolVersion);
}
