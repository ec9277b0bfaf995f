#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pentile {

// Absolute tolerance for geometric predicates after unit-area normalization.
inline constexpr double kGeomTol = 1e-9;
// Below this scale, points/areas are treated as degenerate.
inline constexpr double kDegenTol = 1e-12;
// Vertex-merge tolerance for patch graphs (placement error across O(R^2) tiles).
inline constexpr double kMergeTol = 1e-7;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  TooFewAngles,
  AngleOutOfRange,
  AngleSumMismatch,
  DegeneratePolygon,
  DomainViolation,
  NegativeRadicand,
  PreconditionViolation,
  ValidationFailure,
  MergeAmbiguity,
  RadiusExceedsWindow,
  InsufficientInterior,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  Vec2 rotated(double angle) const {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

// Ordered list of prescribed interior angles (radians) for an n-gon.
// Valid specs have n >= 3, each angle in (0, pi], and sum (n-2)*pi.
class AngleSpec {
 public:
  static AngleSpec from_radians(std::vector<double> angles);
  static AngleSpec from_degrees(const std::vector<double>& angles);

  const std::vector<double>& angles() const { return angles_; }
  int size() const { return static_cast<int>(angles_.size()); }

 private:
  explicit AngleSpec(std::vector<double> angles) : angles_(std::move(angles)) {}
  std::vector<double> angles_;
};

struct PolygonMetrics {
  double perimeter = 0.0;
  double area = 0.0;
  std::vector<double> edge_lengths;
  std::vector<double> interior_angles;
};

// Counterclockwise simple convex vertex loop. Clockwise input is reversed on
// construction; degenerate or nonconvex input is rejected.
class ConvexPolygon {
 public:
  static ConvexPolygon from_vertices(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  double area() const;
  double perimeter() const;
  std::vector<double> edge_lengths() const;
  std::vector<double> interior_angles() const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> vertices)
      : vertices_(std::move(vertices)) {}
  std::vector<Vec2> vertices_;
};

// Raw-loop helpers shared with the tiling machinery (no convexity checks).
double loop_area(std::span<const Vec2> loop);
double loop_perimeter(std::span<const Vec2> loop);
Vec2 loop_centroid(std::span<const Vec2> loop);
std::vector<double> loop_edge_lengths(std::span<const Vec2> loop);
std::vector<double> loop_interior_angles(std::span<const Vec2> loop);

PolygonMetrics polygon_metrics(const ConvexPolygon& poly);

// The n-gon circumscribed about the unit circle whose interior angles, in
// cyclic order, equal spec. Vertex i sits at distance 1/sin(a_i/2) from the
// origin; edge i runs from vertex i to vertex i+1 and has length
// cot(a_i/2) + cot(a_{i+1}/2). The tangency point of edge 0 lies on the
// positive x-axis, so edge 0 is vertical. Angles of exactly pi are rejected.
ConvexPolygon circumscribed_polygon(const AngleSpec& spec);

// Scales about the origin by 1/sqrt(area) so the result has unit area.
ConvexPolygon scale_to_unit_area(const ConvexPolygon& poly);

// 2*sqrt(sum cot(a_i/2)): perimeter of the unit-area circumscribed n-gon.
double closed_form_perimeter(const AngleSpec& spec);

enum class TileKind { Cairo, Prismatic };

const char* tile_kind_name(TileKind kind);

// Unit-area pentagon with two right angles and three angles of 2*pi/3,
// circumscribed about a circle, recentered on its centroid.
// Cairo: cyclic angles (2pi/3, 2pi/3, pi/2, 2pi/3, pi/2); one short edge a
// between the leading pair of 2pi/3 vertices, four equal edges b.
// Prismatic: cyclic angles (2pi/3, 2pi/3, 2pi/3, pi/2, pi/2); house shape
// with two adjacent roof edges a sharing the apex (vertex 1), two walls b,
// and base 2*sqrt(2-sqrt(3)).
struct Prototile {
  TileKind kind;
  ConvexPolygon shape;
  double short_edge = 0.0;
  double long_edge = 0.0;
  double base = 0.0;  // Prismatic only
};

AngleSpec cairo_angles();
AngleSpec prismatic_angles();

Prototile make_prototile(TileKind kind);

// Cached canonical prototiles (immutable after first use).
const Prototile& prototile(TileKind kind);

}  // namespace pentile
