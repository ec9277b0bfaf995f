#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pentile/geometry.hpp"
#include "test_support.hpp"

using namespace pentile;
using testsupport::congruence_residual;
using testsupport::oracle_area;
using testsupport::oracle_perimeter;
using testsupport::random_angle_spec;

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
// Frozen references, each recomputed by the oracle expressions below.
const double kCairoPerimeter = 2.0 * std::sqrt(2.0 + kSqrt3);  // 3.8637033...
const double kShortEdgeA = (2.0 / 3.0) * std::sqrt(6.0 - 3.0 * kSqrt3);
const double kLongEdgeB = (3.0 + kSqrt3) * std::sqrt(2.0 - kSqrt3) / 3.0;
const double kPrismaticBase = 2.0 * std::sqrt(2.0 - kSqrt3);

double cot(double x) { return std::cos(x) / std::sin(x); }

// Oracle for Eq.-style closed forms: 2 * sum of cot(a_i / 2).
double oracle_unscaled_perimeter(const AngleSpec& spec) {
  double sum = 0.0;
  for (double a : spec.angles()) sum += cot(0.5 * a);
  return 2.0 * sum;
}

}  // namespace

TEST_CASE("circumscribed square is the 2x2 square about the unit circle") {
  const auto spec = AngleSpec::from_degrees({90, 90, 90, 90});
  const ConvexPolygon poly = circumscribed_polygon(spec);
  CHECK(poly.perimeter() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(poly.area() == doctest::Approx(4.0).epsilon(1e-12));
  for (const Vec2& v : poly.vertices()) {
    CHECK(std::abs(v.x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.y) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Canonical pose: edge 0 is vertical and tangent at (1, 0).
  CHECK(poly.vertices()[0].x == doctest::Approx(1.0));
  CHECK(poly.vertices()[1].x == doctest::Approx(1.0));
}

TEST_CASE("circumscribed cairo pentagon has P0 = 2 A0 = 2(2 + sqrt 3)") {
  const ConvexPolygon poly = circumscribed_polygon(cairo_angles());
  const double expected = oracle_unscaled_perimeter(cairo_angles());
  CHECK(expected == doctest::Approx(2.0 * (2.0 + kSqrt3)).epsilon(1e-14));
  CHECK(oracle_perimeter(poly.vertices()) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(oracle_area(poly.vertices()) ==
        doctest::Approx(0.5 * expected).epsilon(1e-12));
}

TEST_CASE("circumscribed regular pentagon is regular") {
  const double a = 3.0 * kPi / 5.0;
  const auto spec = AngleSpec::from_radians({a, a, a, a, a});
  const ConvexPolygon poly = circumscribed_polygon(spec);
  const double edge = 2.0 * cot(3.0 * kPi / 10.0);
  for (double e : poly.edge_lengths()) {
    CHECK(e == doctest::Approx(edge).epsilon(1e-12));
  }
  for (double ang : poly.interior_angles()) {
    CHECK(ang == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("angle order is respected in cyclic order") {
  const auto spec = cairo_angles();
  const ConvexPolygon poly = circumscribed_polygon(spec);
  const auto angles = poly.interior_angles();
  for (int i = 0; i < spec.size(); ++i) {
    CHECK(angles[static_cast<size_t>(i)] ==
          doctest::Approx(spec.angles()[static_cast<size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("scale_to_unit_area") {
  SUBCASE("square scales to the unit square") {
    const auto square = circumscribed_polygon(AngleSpec::from_degrees({90, 90, 90, 90}));
    const auto unit = scale_to_unit_area(square);
    CHECK(unit.area() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(unit.perimeter() == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("cairo pentagon scales to perimeter 2 sqrt(2 + sqrt 3)") {
    const auto unit = scale_to_unit_area(circumscribed_polygon(cairo_angles()));
    CHECK(unit.area() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(unit.perimeter() == doctest::Approx(kCairoPerimeter).epsilon(1e-12));
  }
  SUBCASE("already unit-area polygon is unchanged") {
    const auto unit = scale_to_unit_area(circumscribed_polygon(cairo_angles()));
    const auto again = scale_to_unit_area(unit);
    for (size_t i = 0; i < unit.vertices().size(); ++i) {
      CHECK((again.vertices()[i] - unit.vertices()[i]).norm() < 1e-12);
    }
  }
}

TEST_CASE("closed_form_perimeter matches the paper constants") {
  CHECK(closed_form_perimeter(AngleSpec::from_degrees({90, 90, 90, 90})) ==
        doctest::Approx(4.0).epsilon(1e-13));
  const double a = 3.0 * kPi / 5.0;
  const double regular =
      closed_form_perimeter(AngleSpec::from_radians({a, a, a, a, a}));
  CHECK(regular == doctest::Approx(2.0 * std::sqrt(5.0 * cot(3.0 * kPi / 10.0)))
                       .epsilon(1e-13));
  CHECK(regular == doctest::Approx(3.81).epsilon(1e-3));  // "about 3.81"
  CHECK(closed_form_perimeter(cairo_angles()) ==
        doctest::Approx(kCairoPerimeter).epsilon(1e-13));
  CHECK(closed_form_perimeter(prismatic_angles()) ==
        doctest::Approx(kCairoPerimeter).epsilon(1e-13));
}

TEST_CASE("cairo prototile") {
  const Prototile tile = make_prototile(TileKind::Cairo);
  CHECK(tile.shape.area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tile.shape.perimeter() ==
        doctest::Approx(kCairoPerimeter).epsilon(1e-12));
  CHECK(tile.short_edge == doctest::Approx(kShortEdgeA).epsilon(1e-12));
  CHECK(tile.long_edge == doctest::Approx(kLongEdgeB).epsilon(1e-12));
  auto edges = tile.shape.edge_lengths();
  std::sort(edges.begin(), edges.end());
  CHECK(edges[0] == doctest::Approx(kShortEdgeA).epsilon(1e-12));
  for (int i = 1; i < 5; ++i) {
    CHECK(edges[static_cast<size_t>(i)] ==
          doctest::Approx(kLongEdgeB).epsilon(1e-12));
  }
  auto angles = tile.shape.interior_angles();
  std::sort(angles.begin(), angles.end());
  CHECK(angles[0] == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(angles[1] == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  for (int i = 2; i < 5; ++i) {
    CHECK(angles[static_cast<size_t>(i)] ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  }
  // Recentered on the centroid.
  const Vec2 c = loop_centroid(tile.shape.vertices());
  CHECK(c.norm() < 1e-12);
}

TEST_CASE("prismatic prototile") {
  const Prototile tile = make_prototile(TileKind::Prismatic);
  CHECK(tile.shape.area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tile.shape.perimeter() ==
        doctest::Approx(kCairoPerimeter).epsilon(1e-12));
  CHECK(tile.base == doctest::Approx(kPrismaticBase).epsilon(1e-12));
  const auto edges = tile.shape.edge_lengths();
  const auto angles = tile.shape.interior_angles();
  // Two adjacent roof edges of length a share the apex vertex 1 (2 pi / 3).
  CHECK(edges[0] == doctest::Approx(kShortEdgeA).epsilon(1e-12));
  CHECK(edges[1] == doctest::Approx(kShortEdgeA).epsilon(1e-12));
  CHECK(angles[1] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  // Walls b, then the base flanked by the two right angles.
  CHECK(edges[2] == doctest::Approx(kLongEdgeB).epsilon(1e-12));
  CHECK(edges[4] == doctest::Approx(kLongEdgeB).epsilon(1e-12));
  CHECK(edges[3] == doctest::Approx(kPrismaticBase).epsilon(1e-12));
  CHECK(angles[3] == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(angles[4] == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("prismatic prototile matches the explicit house coordinates") {
  // Secondary oracle: base from (-w/2, 0) to (w/2, 0), vertical walls of
  // height b, roof edges at 30 degrees meeting at the apex (0, b + a/2).
  const double w = kPrismaticBase;
  const double b = kLongEdgeB;
  const double a = kShortEdgeA;
  const std::vector<Vec2> house = {{w / 2.0, 0.0},
                                   {w / 2.0, b},
                                   {0.0, b + a / 2.0},
                                   {-w / 2.0, b},
                                   {-w / 2.0, 0.0}};
  CHECK(oracle_area(house) == doctest::Approx(1.0).epsilon(1e-12));
  const Prototile tile = make_prototile(TileKind::Prismatic);
  CHECK(congruence_residual(tile.shape.vertices(), house) < 1e-9);
}

TEST_CASE("polygon_metrics basics") {
  SUBCASE("unit square") {
    const auto square = ConvexPolygon::from_vertices(
        {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto m = polygon_metrics(square);
    CHECK(m.perimeter == doctest::Approx(4.0));
    CHECK(m.area == doctest::Approx(1.0));
    for (double ang : m.interior_angles) {
      CHECK(ang == doctest::Approx(kPi / 2.0));
    }
  }
  SUBCASE("right triangle") {
    const auto tri = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    const auto m = polygon_metrics(tri);
    CHECK(m.area == doctest::Approx(0.5));
    CHECK(m.perimeter == doctest::Approx(2.0 + std::sqrt(2.0)));
  }
  SUBCASE("prismatic tile via the shoelace oracle") {
    const Prototile tile = make_prototile(TileKind::Prismatic);
    const auto m = polygon_metrics(tile.shape);
    CHECK(m.area == doctest::Approx(oracle_area(tile.shape.vertices()))
                        .epsilon(1e-14));
    CHECK(m.perimeter ==
          doctest::Approx(oracle_perimeter(tile.shape.vertices()))
              .epsilon(1e-14));
  }
}

TEST_CASE("clockwise input is reversed, not rejected") {
  const auto square = ConvexPolygon::from_vertices(
      {{0, 1}, {1, 1}, {1, 0}, {0, 0}});  // clockwise
  CHECK(square.area() == doctest::Approx(1.0));
  CHECK(loop_area(square.vertices()) > 0.0);
}

TEST_CASE("construction/formula agreement over random specs") {
  std::mt19937_64 rng(20110811);
  std::uniform_int_distribution<int> pick_n(3, 8);
  double worst = 0.0, worst_identity = 0.0, worst_incircle = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const AngleSpec spec = random_angle_spec(rng, pick_n(rng));
    const ConvexPolygon raw = circumscribed_polygon(spec);
    worst_identity =
        std::max(worst_identity, std::abs(raw.perimeter() - 2.0 * raw.area()));
    const auto& vs = raw.vertices();
    for (size_t i = 0; i < vs.size(); ++i) {
      const Vec2 a = vs[i], b = vs[(i + 1) % vs.size()];
      const double dist = std::abs((b - a).cross(a)) / (b - a).norm();
      worst_incircle = std::max(worst_incircle, std::abs(dist - 1.0));
    }
    const double measured = scale_to_unit_area(raw).perimeter();
    worst = std::max(worst, std::abs(measured - closed_form_perimeter(spec)));
  }
  CHECK(worst < 1e-9);
  CHECK(worst_identity < 1e-9);
  CHECK(worst_incircle < 1e-9);
}

TEST_CASE("angle-preserving perturbations never beat the cairo pentagon") {
  // Translate the edge lines of the circumscribed pentagon in and out while
  // keeping their directions, renormalize to unit area.
  const AngleSpec cairo = cairo_angles();
  const auto& a = cairo.angles();
  const int n = 5;
  std::vector<double> phi(n, 0.0);
  for (int i = 1; i < n; ++i) phi[i] = phi[i - 1] + (kPi - a[static_cast<size_t>(i)]);
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> eps(-0.05, 0.05);
  double best = 1e18;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) dist[static_cast<size_t>(i)] = 1.0 + eps(rng);
    std::vector<Vec2> verts(n);
    for (int i = 0; i < n; ++i) {
      // Vertex i is the intersection of edge lines i-1 and i.
      const int j = (i + n - 1) % n;
      const Vec2 nj{std::cos(phi[static_cast<size_t>(j)]),
                    std::sin(phi[static_cast<size_t>(j)])};
      const Vec2 ni{std::cos(phi[static_cast<size_t>(i)]),
                    std::sin(phi[static_cast<size_t>(i)])};
      const double det = nj.x * ni.y - nj.y * ni.x;
      REQUIRE(std::abs(det) > 1e-9);
      const double dj = dist[static_cast<size_t>(j)];
      const double di = dist[static_cast<size_t>(i)];
      verts[static_cast<size_t>(i)] = {(dj * ni.y - di * nj.y) / det,
                                       (di * nj.x - dj * ni.x) / det};
    }
    const double area = oracle_area(verts);
    REQUIRE(area > 0.0);
    best = std::min(best, oracle_perimeter(verts) / std::sqrt(area));
  }
  CHECK(best >= kCairoPerimeter - 1e-9);
}

TEST_CASE("for fixed n the regular spec minimizes the closed form") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_n(3, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = pick_n(rng);
    const AngleSpec spec = random_angle_spec(rng, n);
    const double regular_angle = (n - 2) * kPi / n;
    const AngleSpec regular = AngleSpec::from_radians(
        std::vector<double>(static_cast<size_t>(n), regular_angle));
    CHECK(closed_form_perimeter(spec) >=
          closed_form_perimeter(regular) - 1e-12);
  }
}

TEST_CASE("error paths") {
  SUBCASE("too few angles") {
    CHECK_THROWS_WITH_AS(AngleSpec::from_degrees({90, 90}),
                         doctest::Contains("TooFewAngles"), Error);
  }
  SUBCASE("angle out of range") {
    CHECK_THROWS_AS(AngleSpec::from_radians({-0.1, kPi / 2, kPi / 2}), Error);
    CHECK_THROWS_AS(AngleSpec::from_radians({0.0, kPi / 2, kPi / 2}), Error);
    CHECK_THROWS_AS(AngleSpec::from_radians({3.2, kPi / 2, kPi / 2}), Error);
  }
  SUBCASE("sum mismatch") {
    CHECK_THROWS_WITH_AS(AngleSpec::from_degrees({90, 90, 90}),
                         doctest::Contains("AngleSumMismatch"), Error);
  }
  SUBCASE("angle of exactly pi is rejected by the construction") {
    const auto spec = AngleSpec::from_radians(
        {kPi, kPi / 2.0, kPi / 2.0, kPi / 2.0, kPi / 2.0});  // sums to 3 pi
    CHECK_THROWS_WITH_AS(circumscribed_polygon(spec),
                         doctest::Contains("AngleOutOfRange"), Error);
    CHECK_THROWS_AS(closed_form_perimeter(spec), Error);
  }
  SUBCASE("degenerate polygon") {
    CHECK_THROWS_WITH_AS(
        ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 0}, {0, 1}}),
        doctest::Contains("DegeneratePolygon"), Error);
    // A sliver below the degeneracy cutoff is rejected at construction, so
    // scale_to_unit_area can never be handed a zero-area polygon.
    CHECK_THROWS_WITH_AS(
        ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {0.5, 1e-13}}),
        doctest::Contains("DegeneratePolygon"), Error);
  }
  SUBCASE("nonconvex polygon") {
    CHECK_THROWS_AS(ConvexPolygon::from_vertices(
                        {{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}),
                    Error);
  }
}
