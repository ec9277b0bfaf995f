// pentile: construct least-perimeter polygons with prescribed angles,
// generate Cairo/Prismatic/mixed pentagonal tiling patches, measure
// perimeter ratios, and run the numerical verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pentile/analysis.hpp"
#include "pentile/geometry.hpp"
#include "pentile/patch_io.hpp"
#include "pentile/tiling.hpp"
#include "pentile/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitDomain = 4;
constexpr int kExitVerification = 5;

int exit_code_for(const pentile::Error& err) {
  switch (err.code()) {
    case pentile::ErrorCode::TooFewAngles:
    case pentile::ErrorCode::AngleOutOfRange:
    case pentile::ErrorCode::AngleSumMismatch:
    case pentile::ErrorCode::ParseError:
      return kExitUsage;
    case pentile::ErrorCode::ValidationFailure:
    case pentile::ErrorCode::MergeAmbiguity:
      return kExitValidation;
    case pentile::ErrorCode::DegeneratePolygon:
    case pentile::ErrorCode::DomainViolation:
    case pentile::ErrorCode::NegativeRadicand:
    case pentile::ErrorCode::PreconditionViolation:
    case pentile::ErrorCode::RadiusExceedsWindow:
    case pentile::ErrorCode::InsufficientInterior:
      return kExitDomain;
  }
  return kExitUsage;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw pentile::Error(pentile::ErrorCode::ParseError,
                           "cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) {
    throw pentile::Error(pentile::ErrorCode::ParseError, "empty number list");
  }
  return out;
}

int cmd_polygon(const std::string& angle_csv, bool radians,
                const std::string& svg_path) {
  const std::vector<double> values = parse_csv_doubles(angle_csv);
  const pentile::AngleSpec spec =
      radians ? pentile::AngleSpec::from_radians(values)
              : pentile::AngleSpec::from_degrees(values);
  const pentile::ConvexPolygon raw = pentile::circumscribed_polygon(spec);
  const pentile::ConvexPolygon unit = pentile::scale_to_unit_area(raw);
  const pentile::PolygonMetrics m = pentile::polygon_metrics(unit);
  const double closed = pentile::closed_form_perimeter(spec);

  std::printf("unit-area polygon with %d prescribed angles\n", spec.size());
  std::printf("vertices:\n");
  for (const auto& v : unit.vertices()) {
    std::printf("  (% .12f, % .12f)\n", v.x, v.y);
  }
  std::printf("edge lengths:\n");
  for (double e : m.edge_lengths) std::printf("  %.12f\n", e);
  std::printf("area:                  %.12f\n", m.area);
  std::printf("measured perimeter:    %.12f\n", m.perimeter);
  std::printf("closed-form perimeter: %.12f\n", closed);

  if (!svg_path.empty()) {
    const double incircle = 1.0 / std::sqrt(raw.area());
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) {
      throw pentile::Error(pentile::ErrorCode::ParseError,
                           "cannot open " + svg_path + " for writing");
    }
    out << pentile::polygon_to_svg(unit, incircle);
    std::printf("svg written to %s\n", svg_path.c_str());
  }
  return kExitOk;
}

int cmd_generate(const std::string& pattern_text, double radius,
                 const std::string& out_path) {
  const pentile::PatternSpec pattern = pentile::PatternSpec::parse(pattern_text);
  const pentile::TilingPatch patch = pentile::generate(pattern, radius);
  pentile::write_patch(patch, out_path);
  std::printf("pattern %s, window radius %.6g: %zu tiles -> %s\n",
              pattern.name().c_str(), radius, patch.tiles.size(),
              out_path.c_str());
  return kExitOk;
}

int cmd_measure(const std::string& patch_path, const std::string& radii_csv) {
  const pentile::TilingPatch patch = pentile::read_patch(patch_path);
  pentile::validate_patch(patch);
  const std::vector<double> radii = parse_csv_doubles(radii_csv);
  const pentile::PatchGraph graph = pentile::build_graph(patch);
  const auto rows = pentile::perimeter_ratio(patch, graph, radii);

  std::printf("%zu tiles, window radius %.6g\n", patch.tiles.size(),
              patch.window_radius);
  std::printf("%10s  %14s\n", "R", "rho_R");
  for (const auto& [R, rho] : rows) {
    std::printf("%10.4f  %14.9f\n", R, rho);
  }
  std::printf("per-tile perimeter (interior tiles): %.9f\n",
              pentile::per_tile_perimeter(patch, graph));
  const pentile::EulerAudit audit = pentile::euler_audit(graph);
  if (!audit.applicable) {
    std::printf("euler audit: %s\n", audit.notice.c_str());
  } else {
    std::printf(
        "euler audit: V=%ld E=%ld F=%ld V*=%ld, V=E-F+1 %s; interior e=%.6f "
        "v3=%.6f sum(v_d/d)=%.6f target %.6f (+/- %.6f)\n",
        audit.V, audit.E, audit.F, audit.V_star,
        audit.euler_exact_full ? "exact" : "VIOLATED", audit.e, audit.v3,
        audit.sum_vd_over_d, audit.handshake_target, audit.eps_boundary);
  }
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, bool as_json, bool self_test) {
  pentile::VerifyOptions options;
  options.seed = seed;
  options.inject_fault = self_test;
  const pentile::VerificationReport report = pentile::run_verification(options);
  if (as_json) {
    std::fputs(pentile::report_to_json(report).c_str(), stdout);
  } else {
    std::fputs(pentile::report_to_text(report).c_str(), stdout);
  }
  if (!report.all_pass()) {
    std::fputs("failing checks:", stderr);
    for (const auto& c : report.checks) {
      if (!c.pass) std::fprintf(stderr, " %s", c.id.c_str());
    }
    std::fputc('\n', stderr);
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_render(const std::string& patch_path, const std::string& out_path) {
  const pentile::TilingPatch patch = pentile::read_patch(patch_path);
  pentile::write_svg(patch, out_path);
  std::printf("wrote %s (%zu tiles)\n", out_path.c_str(), patch.tiles.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cairo-Prismatic pentagonal tiling toolkit"};
  app.require_subcommand(1);

  auto* polygon = app.add_subcommand(
      "polygon", "Least-perimeter unit-area polygon with prescribed angles");
  std::string angle_csv;
  bool radians = false;
  std::string polygon_svg;
  polygon->add_option("--angles", angle_csv, "Comma-separated interior angles")
      ->required();
  polygon->add_flag("--radians", radians, "Angles are in radians (default degrees)");
  polygon->add_option("--svg", polygon_svg, "Write an SVG of the polygon and incircle");

  auto* generate = app.add_subcommand("generate", "Generate a tiling patch");
  std::string pattern_text;
  double radius = 0.0;
  std::string out_path;
  generate->add_option("pattern", pattern_text,
                       "cairo | prismatic | rows:<word over C/P>")
      ->required();
  generate->add_option("radius", radius, "Window radius (>= 3)")->required();
  generate->add_option("out", out_path, "Output patch file")->required();

  auto* measure = app.add_subcommand("measure", "Measure perimeter ratios of a patch");
  std::string patch_path;
  std::string radii_csv = "10,20,40";
  measure->add_option("patch", patch_path, "Patch file")->required();
  measure->add_option("--radii", radii_csv, "Comma-separated disc radii");

  auto* verify = app.add_subcommand("verify", "Run the numerical verification suite");
  std::uint64_t seed = 20110811;
  bool as_json = false;
  bool self_test = false;
  verify->add_option("--seed", seed, "Seed for the randomized scans");
  verify->add_flag("--json", as_json, "Machine-readable report");
  verify->add_flag("--self-test", self_test,
                   "Inject a wrong constant to exercise failure reporting");

  auto* render = app.add_subcommand("render", "Render a patch file to SVG");
  std::string render_patch, render_out;
  render->add_option("patch", render_patch, "Patch file")->required();
  render->add_option("out", render_out, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (polygon->parsed()) return cmd_polygon(angle_csv, radians, polygon_svg);
    if (generate->parsed()) return cmd_generate(pattern_text, radius, out_path);
    if (measure->parsed()) return cmd_measure(patch_path, radii_csv);
    if (verify->parsed()) return cmd_verify(seed, as_json, self_test);
    if (render->parsed()) return cmd_render(render_patch, render_out);
  } catch (const pentile::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  }
  return kExitUsage;
}
