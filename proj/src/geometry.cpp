#include "pentile/geometry.hpp"

#include <algorithm>
#include <mutex>

namespace pentile {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewAngles: return "TooFewAngles";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::AngleSumMismatch: return "AngleSumMismatch";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::MergeAmbiguity: return "MergeAmbiguity";
    case ErrorCode::RadiusExceedsWindow: return "RadiusExceedsWindow";
    case ErrorCode::InsufficientInterior: return "InsufficientInterior";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

const char* tile_kind_name(TileKind kind) {
  return kind == TileKind::Cairo ? "cairo" : "prismatic";
}

AngleSpec AngleSpec::from_radians(std::vector<double> angles) {
  if (angles.size() < 3) {
    throw Error(ErrorCode::TooFewAngles,
                "need at least 3 angles, got " + std::to_string(angles.size()));
  }
  double sum = 0.0;
  for (double a : angles) {
    if (!(a > 0.0) || a > kPi + kGeomTol) {
      throw Error(ErrorCode::AngleOutOfRange,
                  "angle " + std::to_string(a) + " outside (0, pi]");
    }
    sum += a;
  }
  const double expected = (static_cast<double>(angles.size()) - 2.0) * kPi;
  if (std::abs(sum - expected) > kGeomTol) {
    throw Error(ErrorCode::AngleSumMismatch,
                "angles sum to " + std::to_string(sum) + ", expected (n-2)*pi = " +
                    std::to_string(expected));
  }
  return AngleSpec(std::move(angles));
}

AngleSpec AngleSpec::from_degrees(const std::vector<double>& angles) {
  std::vector<double> rad;
  rad.reserve(angles.size());
  for (double a : angles) rad.push_back(a * kPi / 180.0);
  return from_radians(std::move(rad));
}

double loop_area(std::span<const Vec2> loop) {
  double twice = 0.0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    twice += p.cross(q);
  }
  return 0.5 * twice;
}

double loop_perimeter(std::span<const Vec2> loop) {
  double sum = 0.0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    sum += (loop[(i + 1) % n] - loop[i]).norm();
  }
  return sum;
}

Vec2 loop_centroid(std::span<const Vec2> loop) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    const double w = p.cross(q);
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a2) < kDegenTol) {
    throw Error(ErrorCode::DegeneratePolygon, "centroid of zero-area loop");
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

std::vector<double> loop_edge_lengths(std::span<const Vec2> loop) {
  std::vector<double> out;
  const size_t n = loop.size();
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    out.push_back((loop[(i + 1) % n] - loop[i]).norm());
  }
  return out;
}

std::vector<double> loop_interior_angles(std::span<const Vec2> loop) {
  std::vector<double> out;
  const size_t n = loop.size();
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2 prev = loop[(i + n - 1) % n];
    const Vec2 cur = loop[i];
    const Vec2 next = loop[(i + 1) % n];
    const Vec2 in = cur - prev;
    const Vec2 out_edge = next - cur;
    // Interior angle = pi - signed turn (ccw loop).
    const double turn = std::atan2(in.cross(out_edge), in.dot(out_edge));
    out.push_back(kPi - turn);
  }
  return out;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Vec2> vertices) {
  const size_t n = vertices.size();
  if (n < 3) {
    throw Error(ErrorCode::DegeneratePolygon,
                "polygon needs >= 3 vertices, got " + std::to_string(n));
  }
  double scale = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = (vertices[(i + 1) % n] - vertices[i]).norm();
    if (d < kDegenTol) {
      throw Error(ErrorCode::DegeneratePolygon,
                  "repeated vertices at index " + std::to_string(i));
    }
    scale = std::max(scale, d);
  }
  double signed_area = loop_area(vertices);
  if (std::abs(signed_area) <= kDegenTol) {
    throw Error(ErrorCode::DegeneratePolygon, "zero-area polygon");
  }
  if (signed_area < 0.0) {
    std::reverse(vertices.begin(), vertices.end());  // canonical ccw
  }
  const double cross_tol = -kGeomTol * scale * scale;
  double turn_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
    const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (e0.cross(e1) < cross_tol) {
      throw Error(ErrorCode::ValidationFailure,
                  "polygon is not convex at vertex " + std::to_string((i + 1) % n));
    }
    turn_sum += std::atan2(e0.cross(e1), e0.dot(e1));
  }
  // A simple convex ccw loop turns through exactly 2*pi.
  if (std::abs(turn_sum - 2.0 * kPi) > 1e-6) {
    throw Error(ErrorCode::ValidationFailure, "polygon winds more than once");
  }
  return ConvexPolygon(std::move(vertices));
}

double ConvexPolygon::area() const { return loop_area(vertices_); }
double ConvexPolygon::perimeter() const { return loop_perimeter(vertices_); }
std::vector<double> ConvexPolygon::edge_lengths() const {
  return loop_edge_lengths(vertices_);
}
std::vector<double> ConvexPolygon::interior_angles() const {
  return loop_interior_angles(vertices_);
}

PolygonMetrics polygon_metrics(const ConvexPolygon& poly) {
  PolygonMetrics m;
  m.perimeter = poly.perimeter();
  m.area = poly.area();
  m.edge_lengths = poly.edge_lengths();
  m.interior_angles = poly.interior_angles();
  return m;
}

ConvexPolygon circumscribed_polygon(const AngleSpec& spec) {
  const auto& a = spec.angles();
  const int n = spec.size();
  for (double ai : a) {
    if (ai >= kPi - kDegenTol) {
      throw Error(ErrorCode::AngleOutOfRange,
                  "angle of pi is a degenerate vertex; pre-simplify the spec");
    }
  }
  // Tangency angle of edge i; edge 0 touches the unit circle at (1, 0).
  std::vector<double> phi(n);
  phi[0] = 0.0;
  for (int i = 1; i < n; ++i) phi[i] = phi[i - 1] + (kPi - a[i]);
  std::vector<Vec2> verts(n);
  for (int i = 0; i < n; ++i) {
    const double psi =
        (i == 0) ? 0.5 * (phi[n - 1] + 2.0 * kPi) : 0.5 * (phi[i - 1] + phi[i]);
    const double r = 1.0 / std::sin(0.5 * a[i]);
    verts[i] = {r * std::cos(psi), r * std::sin(psi)};
  }
  return ConvexPolygon::from_vertices(std::move(verts));
}

ConvexPolygon scale_to_unit_area(const ConvexPolygon& poly) {
  const double A = poly.area();
  if (A <= kDegenTol) {
    throw Error(ErrorCode::DegeneratePolygon,
                "cannot normalize polygon of area " + std::to_string(A));
  }
  const double s = 1.0 / std::sqrt(A);
  std::vector<Vec2> scaled;
  scaled.reserve(poly.vertices().size());
  for (const Vec2& v : poly.vertices()) scaled.push_back(v * s);
  return ConvexPolygon::from_vertices(std::move(scaled));
}

double closed_form_perimeter(const AngleSpec& spec) {
  double sum = 0.0;
  for (double a : spec.angles()) {
    if (a >= kPi - kDegenTol) {
      throw Error(ErrorCode::AngleOutOfRange,
                  "angle of pi is a degenerate vertex; pre-simplify the spec");
    }
    sum += 1.0 / std::tan(0.5 * a);
  }
  return 2.0 * std::sqrt(sum);
}

AngleSpec cairo_angles() {
  const double A = 2.0 * kPi / 3.0, R = kPi / 2.0;
  return AngleSpec::from_radians({A, A, R, A, R});
}

AngleSpec prismatic_angles() {
  const double A = 2.0 * kPi / 3.0, R = kPi / 2.0;
  return AngleSpec::from_radians({A, A, A, R, R});
}

Prototile make_prototile(TileKind kind) {
  const AngleSpec spec =
      kind == TileKind::Cairo ? cairo_angles() : prismatic_angles();
  const ConvexPolygon unit = scale_to_unit_area(circumscribed_polygon(spec));
  const Vec2 c = loop_centroid(unit.vertices());
  std::vector<Vec2> centered;
  centered.reserve(unit.vertices().size());
  for (const Vec2& v : unit.vertices()) centered.push_back(v - c);
  ConvexPolygon shape = ConvexPolygon::from_vertices(std::move(centered));
  const auto edges = shape.edge_lengths();
  Prototile tile{kind, std::move(shape)};
  if (kind == TileKind::Cairo) {
    tile.short_edge = edges[0];
    tile.long_edge = edges[1];
  } else {
    tile.short_edge = edges[0];
    tile.long_edge = edges[2];
    tile.base = edges[3];
  }
  return tile;
}

const Prototile& prototile(TileKind kind) {
  static const Prototile cairo = make_prototile(TileKind::Cairo);
  static const Prototile prismatic = make_prototile(TileKind::Prismatic);
  return kind == TileKind::Cairo ? cairo : prismatic;
}

}  // namespace pentile
