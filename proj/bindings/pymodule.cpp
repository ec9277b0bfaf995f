#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pentile/analysis.hpp"
#include "pentile/geometry.hpp"
#include "pentile/patch_io.hpp"
#include "pentile/tiling.hpp"
#include "pentile/verify.hpp"

namespace py = pybind11;
using namespace pentile;

namespace {

std::vector<std::pair<double, double>> loop_to_pairs(
    const std::vector<Vec2>& loop) {
  std::vector<std::pair<double, double>> out;
  out.reserve(loop.size());
  for (const Vec2& v : loop) out.emplace_back(v.x, v.y);
  return out;
}

TileKind kind_from_name(const std::string& name) {
  if (name == "cairo") return TileKind::Cairo;
  if (name == "prismatic") return TileKind::Prismatic;
  throw Error(ErrorCode::ParseError, "unknown tile kind '" + name + "'");
}

// Patch plus its merged graph, built lazily on first query.
class PyPatch {
 public:
  explicit PyPatch(TilingPatch patch) : patch_(std::move(patch)) {}

  size_t tile_count() const { return patch_.tiles.size(); }
  double window_radius() const { return patch_.window_radius; }

  std::string tile_kind(size_t i) const {
    return tile_kind_name(patch_.tiles.at(i).kind);
  }
  std::vector<std::pair<double, double>> tile_vertices(size_t i) const {
    return loop_to_pairs(patch_.tiles.at(i).loop);
  }

  void save(const std::string& path) const { write_patch(patch_, path); }
  std::string to_json() const { return patch_to_json(patch_); }
  std::string to_svg() const { return patch_to_svg(patch_); }

  double per_tile_perimeter() { return pentile::per_tile_perimeter(patch_, graph()); }

  std::vector<std::pair<double, double>> ratio(
      const std::vector<double>& radii) {
    return perimeter_ratio(patch_, graph(), radii);
  }

  py::dict euler() {
    const EulerAudit audit = euler_audit(graph());
    py::dict out;
    out["applicable"] = audit.applicable;
    out["notice"] = audit.notice;
    out["V"] = audit.V;
    out["E"] = audit.E;
    out["F"] = audit.F;
    out["V_star"] = audit.V_star;
    out["euler_exact_full"] = audit.euler_exact_full;
    out["euler_exact_interior"] = audit.euler_exact_interior;
    out["interior_tiles"] = audit.Fi;
    out["e"] = audit.e;
    out["v3"] = audit.v3;
    out["sum_vd_over_d"] = audit.sum_vd_over_d;
    out["pass"] = audit.pass();
    return out;
  }

 private:
  const PatchGraph& graph() {
    if (!graph_built_) {
      graph_ = build_graph(patch_);
      graph_built_ = true;
    }
    return graph_;
  }
  TilingPatch patch_;
  PatchGraph graph_;
  bool graph_built_ = false;
};

}  // namespace

PYBIND11_MODULE(_pentile, m) {
  m.doc() = "Cairo-Prismatic pentagonal tiling toolkit";

  py::register_exception<Error>(m, "PentileError");

  m.def(
      "closed_form_perimeter",
      [](const std::vector<double>& angles, bool degrees) {
        const AngleSpec spec = degrees ? AngleSpec::from_degrees(angles)
                                       : AngleSpec::from_radians(angles);
        return closed_form_perimeter(spec);
      },
      py::arg("angles"), py::arg("degrees") = false,
      "Perimeter 2*sqrt(sum cot(a_i/2)) of the least-perimeter unit-area "
      "polygon with the prescribed interior angles");

  m.def(
      "circumscribed_polygon",
      [](const std::vector<double>& angles, bool degrees, bool unit_area) {
        const AngleSpec spec = degrees ? AngleSpec::from_degrees(angles)
                                       : AngleSpec::from_radians(angles);
        ConvexPolygon poly = circumscribed_polygon(spec);
        if (unit_area) poly = scale_to_unit_area(poly);
        return loop_to_pairs(poly.vertices());
      },
      py::arg("angles"), py::arg("degrees") = false,
      py::arg("unit_area") = true,
      "Vertices of the polygon circumscribed about the unit circle with the "
      "prescribed angles, optionally scaled to unit area");

  m.def(
      "polygon_metrics",
      [](const std::vector<std::pair<double, double>>& vertices) {
        std::vector<Vec2> loop;
        loop.reserve(vertices.size());
        for (const auto& [x, y] : vertices) loop.push_back({x, y});
        const auto metrics =
            polygon_metrics(ConvexPolygon::from_vertices(std::move(loop)));
        py::dict out;
        out["perimeter"] = metrics.perimeter;
        out["area"] = metrics.area;
        out["edge_lengths"] = metrics.edge_lengths;
        out["interior_angles"] = metrics.interior_angles;
        return out;
      },
      py::arg("vertices"));

  m.def(
      "prototile",
      [](const std::string& kind) {
        const Prototile& tile = prototile(kind_from_name(kind));
        py::dict out;
        out["kind"] = tile_kind_name(tile.kind);
        out["vertices"] = loop_to_pairs(tile.shape.vertices());
        out["short_edge"] = tile.short_edge;
        out["long_edge"] = tile.long_edge;
        out["base"] = tile.base;
        out["perimeter"] = tile.shape.perimeter();
        out["area"] = tile.shape.area();
        return out;
      },
      py::arg("kind"), "Canonical unit-area Cairo or Prismatic pentagon");

  m.def(
      "eval_P",
      [](int n, double k, double q) {
        return eval_P(PerimeterSurfacePoint::make(n, k, q));
      },
      py::arg("n"), py::arg("k"), py::arg("q"),
      "Perimeter surface P_n(k, q)");

  m.def(
      "grad_P",
      [](int n, double k, double q) {
        const Gradient g = grad_P(PerimeterSurfacePoint::make(n, k, q));
        return std::make_pair(g.dk, g.dq);
      },
      py::arg("n"), py::arg("k"), py::arg("q"),
      "Analytic partials (dP/dk, dP/dq)");

  m.def(
      "lemma32_discriminant",
      [](int n, int k, int k_prime, double u) {
        return lemma32_discriminant(Lemma32Probe::make(n, k, k_prime, u));
      },
      py::arg("n"), py::arg("k"), py::arg("k_prime"), py::arg("u"));

  m.def(
      "lemma33_discriminant",
      [](double n, double c, double c_prime, double d, double d_prime,
         double k) {
        return lemma33_discriminant(
            Lemma33Probe::make(n, c, c_prime, d, d_prime, k));
      },
      py::arg("n"), py::arg("c"), py::arg("c_prime"), py::arg("d"),
      py::arg("d_prime"), py::arg("k"));

  m.def(
      "convexity_scan",
      [](int n, long samples, std::uint64_t seed) {
        const auto scan = convexity_scan_f_n(n, samples, seed);
        py::dict out;
        out["n"] = scan.n;
        out["seed"] = scan.seed;
        auto surface = [](const ConvexitySurfaceReport& s) {
          py::dict d;
          d["surface_sum"] = s.surface_sum;
          d["feasible"] = s.feasible;
          d["segments"] = s.segments;
          d["passes"] = s.passes;
          d["failures"] = s.failures;
          d["worst_gap"] = s.worst_gap;
          return d;
        };
        out["per_n"] = surface(scan.per_n);
        out["printed"] = surface(scan.printed);
        out["all_pass"] = scan.all_pass();
        return out;
      },
      py::arg("n"), py::arg("samples") = 10000, py::arg("seed") = 42);

  m.def("constraint_identity_check", &constraint_identity_check,
        py::arg("f3"), py::arg("f4"), py::arg("f5"), py::arg("k3"),
        py::arg("k4"), py::arg("k5"), py::arg("th3"), py::arg("th4"),
        py::arg("th5"));

  m.def("q_bound_check", []() {
    const QBoundReport report = q_bound_check();
    py::list checks;
    for (const auto& c : report.checks) {
      py::dict d;
      d["id"] = c.id;
      d["computed"] = c.computed;
      d["bound"] = c.bound;
      d["pass"] = c.pass;
      checks.append(d);
    }
    py::dict out;
    out["checks"] = checks;
    out["q3_constant"] = report.q3_constant;
    out["q4_constant"] = report.q4_constant;
    out["p3_value"] = report.p3_value;
    out["p5_value"] = report.p5_value;
    out["all_pass"] = report.all_pass();
    return out;
  });

  py::class_<PyPatch>(m, "Patch")
      .def_property_readonly("tile_count", &PyPatch::tile_count)
      .def_property_readonly("window_radius", &PyPatch::window_radius)
      .def("tile_kind", &PyPatch::tile_kind, py::arg("index"))
      .def("tile_vertices", &PyPatch::tile_vertices, py::arg("index"))
      .def("save", &PyPatch::save, py::arg("path"))
      .def("to_json", &PyPatch::to_json)
      .def("to_svg", &PyPatch::to_svg)
      .def("per_tile_perimeter", &PyPatch::per_tile_perimeter)
      .def("perimeter_ratio", &PyPatch::ratio, py::arg("radii"))
      .def("euler_audit", &PyPatch::euler);

  m.def(
      "generate",
      [](const std::string& pattern, double radius) {
        return PyPatch(generate(PatternSpec::parse(pattern), radius));
      },
      py::arg("pattern"), py::arg("radius"),
      "Generate and validate a tiling patch (cairo | prismatic | rows:<CP "
      "word>)");

  m.def(
      "load_patch",
      [](const std::string& path) {
        TilingPatch patch = read_patch(path);
        validate_patch(patch);
        return PyPatch(std::move(patch));
      },
      py::arg("path"));

  m.def(
      "verify",
      [](std::uint64_t seed, bool include_tiling) {
        VerifyOptions options;
        options.seed = seed;
        options.include_tiling = include_tiling;
        const VerificationReport report = run_verification(options);
        py::list checks;
        for (const auto& c : report.checks) {
          py::dict d;
          d["id"] = c.id;
          d["pass"] = c.pass;
          d["detail"] = c.detail;
          checks.append(d);
        }
        py::dict out;
        out["seed"] = report.seed;
        out["all_pass"] = report.all_pass();
        out["failures"] = report.failures();
        out["checks"] = checks;
        return out;
      },
      py::arg("seed") = 20110811, py::arg("include_tiling") = true,
      "Run the full verification suite and return the report");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
