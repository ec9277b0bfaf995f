#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pentile/geometry.hpp"

namespace pentile {

// One period of the diagonal-row pattern: a nonempty word over {C, P}.
struct RowSequence {
  std::string word;
  static RowSequence parse(const std::string& word);
};

struct PatternSpec {
  enum class Type { Cairo, Prismatic, Rows };
  Type type = Type::Cairo;
  RowSequence rows;  // Rows only

  // Accepts "cairo", "prismatic", or "rows:<word over C/P>".
  static PatternSpec parse(const std::string& text);
  std::string name() const;
};

// Direct isometry (we never need reflections: both prototiles are achiral
// and the generators use rotations only, but the flag is kept for loaded
// patches).
struct Isometry {
  double rotation = 0.0;
  Vec2 translation;
  bool reflected = false;

  Vec2 apply(Vec2 p) const {
    if (reflected) p.y = -p.y;
    return p.rotated(rotation) + translation;
  }
};

struct PlacedTile {
  TileKind kind = TileKind::Cairo;
  Isometry pose;
  std::vector<Vec2> loop;  // resolved ccw vertex loop
};

struct TilingPatch {
  double window_radius = 0.0;
  std::vector<PlacedTile> tiles;
};

// Generates a validated patch covering the disc of radius R (R >= 3). A tile
// is included iff its centroid lies within R + 2. Throws ValidationFailure
// with a diagnostic if the construction fails its own gap/overlap audit.
TilingPatch generate(const PatternSpec& pattern, double R);

// Congruence, unit-area, pairwise-overlap, and gap checks. Gap probing uses a
// grid of pitch 0.05 over the window disc.
void validate_patch(const TilingPatch& patch);

// Merged vertex/edge/face complex of a patch. Edges are subdivided at
// vertices lying in the interior of another tile's edge (the V* convention),
// so every count below refers to the subdivided complex.
struct PatchGraph {
  std::vector<Vec2> vertex_pos;
  std::vector<int> vertex_degree;        // incident subdivided edges
  std::vector<bool> vertex_is_vstar;     // interior to some tile edge
  std::vector<bool> vertex_on_boundary;  // touches an unshared edge

  struct Edge {
    int a = 0;
    int b = 0;
    int face_count = 0;
  };
  std::vector<Edge> edges;

  std::vector<std::vector<int>> tile_vertices;  // merged ids around each loop
  std::vector<std::vector<int>> tile_edges;     // subdivided edge ids
  std::vector<bool> tile_interior;  // closed neighborhood inside the patch

  long V = 0;
  long E = 0;
  long F = 0;
  long V_star = 0;
  long interior_tiles = 0;

  // Statistics over interior tiles.
  double avg_edges_per_face = 0.0;    // e
  std::map<int, double> v_d;          // per-face-average vertices by degree

  double v_d_at(int d) const {
    auto it = v_d.find(d);
    return it == v_d.end() ? 0.0 : it->second;
  }
};

PatchGraph build_graph(const TilingPatch& patch);

struct EulerAudit {
  bool applicable = true;
  std::string notice;

  long V = 0, E = 0, F = 0, V_star = 0;
  bool euler_exact_full = false;  // V = E - F + 1 on the whole complex

  long Vi = 0, Ei = 0, Fi = 0;    // interior-restricted subcomplex
  bool euler_exact_interior = false;

  double e = 0.0;                 // average edges per interior face
  double sum_vd_over_d = 0.0;     // sum v_d / d
  double handshake_target = 0.0;  // e/2 - 1
  double handshake_deviation = 0.0;
  double v3 = 0.0;
  double v3_bound = 0.0;          // 3e - 12
  double eps_boundary = 0.0;      // c / sqrt(Fi)
  double boundary_c = 0.0;        // the constant used for eps_boundary

  bool v3_pass = false;
  bool handshake_pass = false;
  bool pass() const {
    return applicable && euler_exact_full && euler_exact_interior &&
           handshake_pass && v3_pass;
  }
};

// Boundary constant for the audit tolerances c / sqrt(F_interior).
inline constexpr double kEulerBoundaryC = 8.0;

EulerAudit euler_audit(const PatchGraph& graph);

// rho_R = (length of tile-boundary arcs inside the R-disc, each shared edge
// counted once) / (pi R^2), with exact segment-circle clipping.
std::vector<std::pair<double, double>> perimeter_ratio(
    const TilingPatch& patch, const PatchGraph& graph,
    const std::vector<double>& radii);
std::vector<std::pair<double, double>> perimeter_ratio(
    const TilingPatch& patch, const std::vector<double>& radii);

// Mean perimeter over interior tiles.
double per_tile_perimeter(const TilingPatch& patch, const PatchGraph& graph);
double per_tile_perimeter(const TilingPatch& patch);

// Least-squares slope of log|rho_R - target| against log R; the tail decays
// roughly like 1/R, so the fitted exponent should be <= -0.8.
double fitted_decay_exponent(
    const std::vector<std::pair<double, double>>& ratios, double target);

}  // namespace pentile
