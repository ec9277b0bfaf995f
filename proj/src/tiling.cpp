#include "pentile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace pentile {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double normalized_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

struct BBox {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
};

BBox loop_bbox(const std::vector<Vec2>& loop) {
  BBox b{loop[0].x, loop[0].y, loop[0].x, loop[0].y};
  for (const Vec2& p : loop) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

// Dense cell grid over the patch extent for tile lookups.
class TileGrid {
 public:
  TileGrid(const TilingPatch& patch, double cell) : cell_(cell) {
    BBox ext{1e18, 1e18, -1e18, -1e18};
    for (const auto& tile : patch.tiles) {
      const BBox b = loop_bbox(tile.loop);
      ext.xmin = std::min(ext.xmin, b.xmin);
      ext.ymin = std::min(ext.ymin, b.ymin);
      ext.xmax = std::max(ext.xmax, b.xmax);
      ext.ymax = std::max(ext.ymax, b.ymax);
    }
    x0_ = ext.xmin - cell_;
    y0_ = ext.ymin - cell_;
    nx_ = static_cast<int>((ext.xmax - x0_) / cell_) + 2;
    ny_ = static_cast<int>((ext.ymax - y0_) / cell_) + 2;
    bins_.resize(static_cast<size_t>(nx_) * ny_);
    for (size_t t = 0; t < patch.tiles.size(); ++t) {
      const BBox b = loop_bbox(patch.tiles[t].loop);
      for (int iy = rowy(b.ymin); iy <= rowy(b.ymax); ++iy) {
        for (int ix = colx(b.xmin); ix <= colx(b.xmax); ++ix) {
          bins_[static_cast<size_t>(iy) * nx_ + ix].push_back(
              static_cast<int>(t));
        }
      }
    }
  }

  const std::vector<int>& cell_at(double x, double y) const {
    return bins_[static_cast<size_t>(rowy(y)) * nx_ + colx(x)];
  }

  template <typename Fn>
  void for_bbox(const BBox& b, Fn&& fn) const {
    for (int iy = rowy(b.ymin); iy <= rowy(b.ymax); ++iy) {
      for (int ix = colx(b.xmin); ix <= colx(b.xmax); ++ix) {
        for (int t : bins_[static_cast<size_t>(iy) * nx_ + ix]) fn(t);
      }
    }
  }

 private:
  int colx(double x) const {
    return std::clamp(static_cast<int>((x - x0_) / cell_), 0, nx_ - 1);
  }
  int rowy(double y) const {
    return std::clamp(static_cast<int>((y - y0_) / cell_), 0, ny_ - 1);
  }
  double cell_, x0_ = 0, y0_ = 0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> bins_;
};

bool point_in_convex(const std::vector<Vec2>& loop, Vec2 p, double tol) {
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = loop[i];
    const Vec2 b = loop[(i + 1) % n];
    if ((b - a).cross(p - a) < -tol) return false;
  }
  return true;
}

// Sutherland-Hodgman clip of one ccw convex loop by another.
double convex_intersection_area(const std::vector<Vec2>& a,
                                const std::vector<Vec2>& b) {
  std::vector<Vec2> poly = a;
  std::vector<Vec2> next;
  for (size_t i = 0; i < b.size() && !poly.empty(); ++i) {
    const Vec2 p = b[i];
    const Vec2 q = b[(i + 1) % b.size()];
    const Vec2 dir = q - p;
    next.clear();
    for (size_t j = 0; j < poly.size(); ++j) {
      const Vec2 cur = poly[j];
      const Vec2 nxt = poly[(j + 1) % poly.size()];
      const double dc = dir.cross(cur - p);
      const double dn = dir.cross(nxt - p);
      if (dc >= 0.0) next.push_back(cur);
      if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
        const double t = dc / (dc - dn);
        next.push_back(cur + (nxt - cur) * t);
      }
    }
    poly.swap(next);
  }
  if (poly.size() < 3) return 0.0;
  return std::abs(loop_area(poly));
}

bool cyclic_sequences_match(const std::vector<double>& got_edges,
                            const std::vector<double>& got_angles,
                            const std::vector<double>& ref_edges,
                            const std::vector<double>& ref_angles,
                            double tol) {
  const size_t n = ref_edges.size();
  if (got_edges.size() != n) return false;
  for (size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      ok = std::abs(got_edges[(off + i) % n] - ref_edges[i]) <= tol &&
           std::abs(got_angles[(off + i) % n] - ref_angles[i]) <= tol;
    }
    if (ok) return true;
  }
  return false;
}

bool congruent_to_prototile(const std::vector<Vec2>& loop, TileKind kind,
                            double tol) {
  const Prototile& proto = prototile(kind);
  const auto ref_edges = proto.shape.edge_lengths();
  const auto ref_angles = proto.shape.interior_angles();
  const auto edges = loop_edge_lengths(loop);
  const auto angles = loop_interior_angles(loop);
  if (cyclic_sequences_match(edges, angles, ref_edges, ref_angles, tol)) {
    return true;
  }
  // Mirror image: reverse the loop and retry.
  std::vector<Vec2> rev(loop.rbegin(), loop.rend());
  return cyclic_sequences_match(loop_edge_lengths(rev),
                                loop_interior_angles(rev), ref_edges,
                                ref_angles, tol);
}

}  // namespace

RowSequence RowSequence::parse(const std::string& word) {
  if (word.empty()) {
    throw Error(ErrorCode::ParseError, "row sequence must be nonempty");
  }
  for (char c : word) {
    if (c != 'C' && c != 'P') {
      throw Error(ErrorCode::ParseError,
                  std::string("row sequence letter '") + c +
                      "' is not C or P");
    }
  }
  return RowSequence{word};
}

PatternSpec PatternSpec::parse(const std::string& text) {
  if (text == "cairo") return {Type::Cairo, {}};
  if (text == "prismatic") return {Type::Prismatic, {}};
  if (text.rfind("rows:", 0) == 0) {
    return {Type::Rows, RowSequence::parse(text.substr(5))};
  }
  throw Error(ErrorCode::ParseError,
              "pattern must be cairo, prismatic, or rows:<word over C/P>, "
              "got '" +
                  text + "'");
}

std::string PatternSpec::name() const {
  switch (type) {
    case Type::Cairo: return "cairo";
    case Type::Prismatic: return "prismatic";
    case Type::Rows: return "rows:" + rows.word;
  }
  return "?";
}

// The generators work in a "row frame" where diagonal rows are horizontal
// strips stacked along y, every strip boundary being the same zigzag: one
// short edge a at 45 degrees centered at (2i, Y), one straight 2b segment at
// -15 degrees centered at (2i+1, Y). A Cairo row has height 2 and holds one
// 4-pentagon pinwheel per period; a Prismatic row has height 1 and holds one
// 2-pentagon hexagon per period, shifting the zigzag phase by 2 - sqrt(3).
TilingPatch generate(const PatternSpec& pattern, double R) {
  if (!(R >= 3.0)) {
    throw Error(ErrorCode::DomainViolation,
                "window radius must be >= 3, got " + std::to_string(R));
  }
  std::string word;
  double post_rotation = 0.0;
  switch (pattern.type) {
    case PatternSpec::Type::Cairo:
      word = "C";
      post_rotation = kPi / 4.0;  // axis-aligned pinwheels
      break;
    case PatternSpec::Type::Prismatic:
      word = "P";
      post_rotation = -75.0 * kPi / 180.0;  // upright houses
      break;
    case PatternSpec::Type::Rows:
      word = pattern.rows.word;
      post_rotation = kPi / 4.0;  // rows run diagonally
      break;
  }

  const ConvexPolygon cairo_canon =
      scale_to_unit_area(circumscribed_polygon(cairo_angles()));
  const ConvexPolygon pris_canon =
      scale_to_unit_area(circumscribed_polygon(prismatic_angles()));
  const Vec2 cairo_centroid = loop_centroid(cairo_canon.vertices());
  const Vec2 pris_centroid = loop_centroid(pris_canon.vertices());
  // Pinwheel tiles rotate about the canonical right-angle vertex 2.
  const Vec2 pivot = cairo_canon.vertices()[2];

  const double s = std::sqrt(2.0 - kSqrt3);  // half the Prismatic base
  const double p_shift = 2.0 - kSqrt3;       // zigzag phase shift per P row
  const double include_r = R + 2.0;

  const auto letter = [&word](long r) {
    const long L = static_cast<long>(word.size());
    return word[static_cast<size_t>(((r % L) + L) % L)];
  };
  const auto height_of = [](char c) { return c == 'C' ? 2.0 : 1.0; };
  const auto shift_of = [&](char c) { return c == 'C' ? 0.0 : p_shift; };

  struct RawPose {
    TileKind kind;
    double rotation;
    Vec2 translation;
  };
  std::vector<RawPose> poses;

  // Walk down to the first row below the window, then emit upward.
  long r = 0;
  double Y = 0.0, X = 0.0;
  while (Y > -(include_r + 3.0)) {
    --r;
    Y -= height_of(letter(r));
    X -= shift_of(letter(r));
  }
  const Vec2 house_offset =
      pris_centroid.rotated(135.0 * kPi / 180.0) +
      Vec2{0.0, s}.rotated(75.0 * kPi / 180.0);
  while (Y <= include_r + 1.0) {
    const char c = letter(r);
    const long i_min =
        static_cast<long>(std::floor((-include_r - 3.0 - X) / 2.0));
    const long i_max =
        static_cast<long>(std::ceil((include_r + 3.0 - X) / 2.0));
    for (long i = i_min; i <= i_max; ++i) {
      if (c == 'C') {
        const Vec2 center{X + 2.0 * i, Y + 1.0};
        for (int kq = 0; kq < 4; ++kq) {
          const double rot = -kPi / 4.0 + kq * kPi / 2.0;
          poses.push_back(
              {TileKind::Cairo, rot,
               center + (cairo_centroid - pivot).rotated(rot)});
        }
      } else {
        const Vec2 t{X + 1.0 + 0.5 * p_shift + 2.0 * i, Y + 0.5};
        poses.push_back(
            {TileKind::Prismatic, 135.0 * kPi / 180.0, t + house_offset});
        poses.push_back(
            {TileKind::Prismatic, 315.0 * kPi / 180.0, t - house_offset});
      }
    }
    Y += height_of(c);
    X += shift_of(c);
    ++r;
  }

  TilingPatch patch;
  patch.window_radius = R;
  for (const RawPose& raw : poses) {
    Isometry pose;
    pose.rotation = normalized_angle(raw.rotation + post_rotation);
    pose.translation = raw.translation.rotated(post_rotation);
    if (pose.translation.norm() > include_r) continue;  // centroid rule
    PlacedTile tile;
    tile.kind = raw.kind;
    tile.pose = pose;
    const auto& proto = prototile(raw.kind).shape.vertices();
    tile.loop.reserve(proto.size());
    for (const Vec2& v : proto) tile.loop.push_back(pose.apply(v));
    patch.tiles.push_back(std::move(tile));
  }
  validate_patch(patch);
  return patch;
}

void validate_patch(const TilingPatch& patch) {
  if (!(patch.window_radius > 0.0)) {
    throw Error(ErrorCode::DomainViolation, "window radius must be positive");
  }
  if (patch.tiles.empty()) {
    throw Error(ErrorCode::ValidationFailure, "patch has no tiles");
  }
  for (size_t t = 0; t < patch.tiles.size(); ++t) {
    const auto& tile = patch.tiles[t];
    if (tile.loop.size() != 5) {
      throw Error(ErrorCode::ValidationFailure,
                  "tile " + std::to_string(t) + " has " +
                      std::to_string(tile.loop.size()) + " vertices");
    }
    const double area = loop_area(tile.loop);
    if (std::abs(area - 1.0) > kMergeTol) {
      throw Error(ErrorCode::ValidationFailure,
                  "tile " + std::to_string(t) + " has area " +
                      std::to_string(area));
    }
    if (!congruent_to_prototile(tile.loop, tile.kind, kMergeTol)) {
      throw Error(ErrorCode::ValidationFailure,
                  "tile " + std::to_string(t) +
                      " is not congruent to its prototile");
    }
  }

  const TileGrid grid(patch, 2.0);

  // Pairwise interior overlap.
  for (size_t t = 0; t < patch.tiles.size(); ++t) {
    const BBox b = loop_bbox(patch.tiles[t].loop);
    int worst = -1;
    double worst_area = 0.0;
    grid.for_bbox(b, [&](int other) {
      if (other <= static_cast<int>(t)) return;
      const double area = convex_intersection_area(
          patch.tiles[t].loop, patch.tiles[static_cast<size_t>(other)].loop);
      if (area > worst_area) {
        worst_area = area;
        worst = other;
      }
    });
    if (worst_area > kMergeTol) {
      throw Error(ErrorCode::ValidationFailure,
                  "tiles " + std::to_string(t) + " and " +
                      std::to_string(worst) + " overlap with area " +
                      std::to_string(worst_area));
    }
  }

  // Gap probe over the window disc.
  const double R = patch.window_radius;
  const double pitch = 0.05;
  const long n = static_cast<long>(std::floor(R / pitch));
  for (long iy = -n; iy <= n; ++iy) {
    const double y = iy * pitch;
    for (long ix = -n; ix <= n; ++ix) {
      const double x = ix * pitch;
      if (x * x + y * y > R * R) continue;
      bool covered = false;
      for (int t : grid.cell_at(x, y)) {
        if (point_in_convex(patch.tiles[static_cast<size_t>(t)].loop, {x, y},
                            2e-7)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        throw Error(ErrorCode::ValidationFailure,
                    "gap at probe point (" + std::to_string(x) + ", " +
                        std::to_string(y) + ")");
      }
    }
  }
}

namespace {

// Vertex clustering at kMergeTol via a hash grid keyed on merge-sized cells.
class VertexMerger {
 public:
  int add(Vec2 p) {
    const long ix = cell_of(p.x);
    const long iy = cell_of(p.y);
    for (long dy = -1; dy <= 1; ++dy) {
      for (long dx = -1; dx <= 1; ++dx) {
        const auto it = cells_.find(key(ix + dx, iy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second) {
          if ((reps_[static_cast<size_t>(id)] - p).norm() <= kMergeTol) {
            return id;
          }
        }
      }
    }
    const int id = static_cast<int>(reps_.size());
    reps_.push_back(p);
    cells_[key(ix, iy)].push_back(id);
    return id;
  }

  const std::vector<Vec2>& reps() const { return reps_; }

 private:
  static long cell_of(double v) {
    return static_cast<long>(std::floor(v / kMergeTol));
  }
  static std::uint64_t key(long ix, long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
  }
  std::vector<Vec2> reps_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b, double& t_out) {
  const Vec2 d = b - a;
  const double len2 = d.dot(d);
  const double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t_out = t;
  const Vec2 proj = a + d * std::clamp(t, 0.0, 1.0);
  return (p - proj).norm();
}

}  // namespace

PatchGraph build_graph(const TilingPatch& patch) {
  PatchGraph graph;
  const size_t n_tiles = patch.tiles.size();

  VertexMerger merger;
  graph.tile_vertices.resize(n_tiles);
  for (size_t t = 0; t < n_tiles; ++t) {
    auto& ids = graph.tile_vertices[t];
    ids.reserve(patch.tiles[t].loop.size());
    for (const Vec2& p : patch.tiles[t].loop) ids.push_back(merger.add(p));
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) {
        if (ids[i] == ids[j]) {
          throw Error(ErrorCode::MergeAmbiguity,
                      "tile " + std::to_string(t) +
                          " has two corners merged into one vertex");
        }
      }
    }
  }
  graph.vertex_pos = merger.reps();
  const size_t n_verts = graph.vertex_pos.size();
  graph.vertex_is_vstar.assign(n_verts, false);

  // Cell grid over merged vertices for edge-subdivision lookups.
  BBox ext{1e18, 1e18, -1e18, -1e18};
  for (const Vec2& p : graph.vertex_pos) {
    ext.xmin = std::min(ext.xmin, p.x);
    ext.ymin = std::min(ext.ymin, p.y);
    ext.xmax = std::max(ext.xmax, p.x);
    ext.ymax = std::max(ext.ymax, p.y);
  }
  const double cell = 1.0;
  const int nx = static_cast<int>((ext.xmax - ext.xmin) / cell) + 3;
  const int ny = static_cast<int>((ext.ymax - ext.ymin) / cell) + 3;
  std::vector<std::vector<int>> vert_bins(static_cast<size_t>(nx) * ny);
  const auto bin_of = [&](double x, double y) {
    const int ix =
        std::clamp(static_cast<int>((x - ext.xmin) / cell) + 1, 0, nx - 1);
    const int iy =
        std::clamp(static_cast<int>((y - ext.ymin) / cell) + 1, 0, ny - 1);
    return static_cast<size_t>(iy) * nx + ix;
  };
  for (size_t v = 0; v < n_verts; ++v) {
    vert_bins[bin_of(graph.vertex_pos[v].x, graph.vertex_pos[v].y)].push_back(
        static_cast<int>(v));
  }

  // Subdivide every tile edge at vertices interior to it, then collect
  // unique subdivided edges.
  std::unordered_map<std::uint64_t, int> edge_ids;
  const auto edge_key = [](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (hi << 32) | lo;
  };
  graph.tile_edges.resize(n_tiles);
  std::vector<std::pair<double, int>> on_edge;
  for (size_t t = 0; t < n_tiles; ++t) {
    const auto& ids = graph.tile_vertices[t];
    const size_t m = ids.size();
    for (size_t i = 0; i < m; ++i) {
      const int a = ids[i];
      const int b = ids[(i + 1) % m];
      const Vec2 pa = graph.vertex_pos[static_cast<size_t>(a)];
      const Vec2 pb = graph.vertex_pos[static_cast<size_t>(b)];
      on_edge.clear();
      const BBox eb{std::min(pa.x, pb.x) - cell, std::min(pa.y, pb.y) - cell,
                    std::max(pa.x, pb.x) + cell, std::max(pa.y, pb.y) + cell};
      for (double y = eb.ymin; y <= eb.ymax + cell; y += cell) {
        for (double x = eb.xmin; x <= eb.xmax + cell; x += cell) {
          for (int v : vert_bins[bin_of(x, y)]) {
            if (v == a || v == b) continue;
            double tt = 0.0;
            const double dist = point_segment_distance(
                graph.vertex_pos[static_cast<size_t>(v)], pa, pb, tt);
            if (dist <= kMergeTol && tt > 1e-9 && tt < 1.0 - 1e-9) {
              on_edge.emplace_back(tt, v);
            }
          }
        }
      }
      std::sort(on_edge.begin(), on_edge.end());
      on_edge.erase(std::unique(on_edge.begin(), on_edge.end(),
                                [](const auto& l, const auto& r) {
                                  return l.second == r.second;
                                }),
                    on_edge.end());
      int prev = a;
      for (const auto& [tt, v] : on_edge) {
        graph.vertex_is_vstar[static_cast<size_t>(v)] = true;
        const auto [it, inserted] = edge_ids.try_emplace(
            edge_key(prev, v), static_cast<int>(graph.edges.size()));
        if (inserted) graph.edges.push_back({prev, v, 0});
        graph.edges[static_cast<size_t>(it->second)].face_count += 1;
        graph.tile_edges[t].push_back(it->second);
        prev = v;
      }
      const auto [it, inserted] = edge_ids.try_emplace(
          edge_key(prev, b), static_cast<int>(graph.edges.size()));
      if (inserted) graph.edges.push_back({prev, b, 0});
      graph.edges[static_cast<size_t>(it->second)].face_count += 1;
      graph.tile_edges[t].push_back(it->second);
    }
  }

  graph.vertex_degree.assign(n_verts, 0);
  graph.vertex_on_boundary.assign(n_verts, false);
  for (const auto& e : graph.edges) {
    graph.vertex_degree[static_cast<size_t>(e.a)] += 1;
    graph.vertex_degree[static_cast<size_t>(e.b)] += 1;
    if (e.face_count == 1) {
      graph.vertex_on_boundary[static_cast<size_t>(e.a)] = true;
      graph.vertex_on_boundary[static_cast<size_t>(e.b)] = true;
    }
  }

  graph.tile_interior.assign(n_tiles, false);
  for (size_t t = 0; t < n_tiles; ++t) {
    bool interior = true;
    for (int eid : graph.tile_edges[t]) {
      const auto& e = graph.edges[static_cast<size_t>(eid)];
      if (graph.vertex_on_boundary[static_cast<size_t>(e.a)] ||
          graph.vertex_on_boundary[static_cast<size_t>(e.b)]) {
        interior = false;
        break;
      }
    }
    graph.tile_interior[t] = interior;
    if (interior) ++graph.interior_tiles;
  }

  graph.V = static_cast<long>(n_verts);
  graph.E = static_cast<long>(graph.edges.size());
  graph.F = static_cast<long>(n_tiles);
  for (size_t v = 0; v < n_verts; ++v) {
    if (graph.vertex_is_vstar[v]) ++graph.V_star;
  }

  if (graph.interior_tiles > 0) {
    double edge_sum = 0.0;
    std::map<int, long> counts;
    for (size_t t = 0; t < n_tiles; ++t) {
      if (!graph.tile_interior[t]) continue;
      edge_sum += static_cast<double>(graph.tile_edges[t].size());
      for (int vid : graph.tile_vertices[t]) {
        const int deg = graph.vertex_degree[static_cast<size_t>(vid)];
        const int d_eff = graph.vertex_is_vstar[static_cast<size_t>(vid)]
                              ? 2 * (deg - 1)
                              : deg;
        counts[d_eff] += 1;
      }
    }
    graph.avg_edges_per_face =
        edge_sum / static_cast<double>(graph.interior_tiles);
    for (const auto& [d, count] : counts) {
      graph.v_d[d] = static_cast<double>(count) /
                     static_cast<double>(graph.interior_tiles);
    }
  }
  return graph;
}

EulerAudit euler_audit(const PatchGraph& graph) {
  EulerAudit audit;
  audit.V = graph.V;
  audit.E = graph.E;
  audit.F = graph.F;
  audit.V_star = graph.V_star;
  if (graph.interior_tiles < 1) {
    audit.applicable = false;
    audit.notice = "InsufficientInterior: boundary dominates, audit skipped";
    return audit;
  }
  audit.euler_exact_full = (graph.V == graph.E - graph.F + 1);

  std::vector<char> vert_used(graph.vertex_pos.size(), 0);
  std::vector<char> edge_used(graph.edges.size(), 0);
  for (size_t t = 0; t < graph.tile_edges.size(); ++t) {
    if (!graph.tile_interior[t]) continue;
    ++audit.Fi;
    for (int eid : graph.tile_edges[t]) {
      if (!edge_used[static_cast<size_t>(eid)]) {
        edge_used[static_cast<size_t>(eid)] = 1;
        ++audit.Ei;
      }
      const auto& e = graph.edges[static_cast<size_t>(eid)];
      for (int vid : {e.a, e.b}) {
        if (!vert_used[static_cast<size_t>(vid)]) {
          vert_used[static_cast<size_t>(vid)] = 1;
          ++audit.Vi;
        }
      }
    }
  }
  audit.euler_exact_interior = (audit.Vi == audit.Ei - audit.Fi + 1);

  audit.e = graph.avg_edges_per_face;
  for (const auto& [d, vd] : graph.v_d) {
    audit.sum_vd_over_d += vd / static_cast<double>(d);
  }
  audit.handshake_target = audit.e / 2.0 - 1.0;
  audit.handshake_deviation = audit.sum_vd_over_d - audit.handshake_target;
  audit.boundary_c = kEulerBoundaryC;
  audit.eps_boundary =
      kEulerBoundaryC / std::sqrt(static_cast<double>(audit.Fi));
  audit.handshake_pass =
      std::abs(audit.handshake_deviation) <= audit.eps_boundary;
  audit.v3 = graph.v_d_at(3);
  audit.v3_bound = 3.0 * audit.e - 12.0;
  audit.v3_pass = audit.v3 >= audit.v3_bound - audit.eps_boundary;
  return audit;
}

std::vector<std::pair<double, double>> perimeter_ratio(
    const TilingPatch& patch, const PatchGraph& graph,
    const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double R : radii) {
    if (R > patch.window_radius + kGeomTol) {
      throw Error(ErrorCode::RadiusExceedsWindow,
                  "radius " + std::to_string(R) + " exceeds window " +
                      std::to_string(patch.window_radius));
    }
    double total = 0.0;
    for (const auto& e : graph.edges) {
      const Vec2 a = graph.vertex_pos[static_cast<size_t>(e.a)];
      const Vec2 b = graph.vertex_pos[static_cast<size_t>(e.b)];
      const Vec2 d = b - a;
      const double qa = d.dot(d);
      if (qa <= 0.0) continue;
      const double qb = 2.0 * a.dot(d);
      const double qc = a.dot(a) - R * R;
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc <= 0.0) continue;  // line misses (or grazes) the circle
      const double root = std::sqrt(disc);
      const double t_lo = std::max(0.0, (-qb - root) / (2.0 * qa));
      const double t_hi = std::min(1.0, (-qb + root) / (2.0 * qa));
      if (t_hi > t_lo) total += (t_hi - t_lo) * std::sqrt(qa);
    }
    out.emplace_back(R, total / (kPi * R * R));
  }
  return out;
}

std::vector<std::pair<double, double>> perimeter_ratio(
    const TilingPatch& patch, const std::vector<double>& radii) {
  return perimeter_ratio(patch, build_graph(patch), radii);
}

double per_tile_perimeter(const TilingPatch& patch, const PatchGraph& graph) {
  if (graph.interior_tiles < 1) {
    throw Error(ErrorCode::InsufficientInterior,
                "patch has no interior tiles");
  }
  double sum = 0.0;
  for (size_t t = 0; t < patch.tiles.size(); ++t) {
    if (graph.tile_interior[t]) sum += loop_perimeter(patch.tiles[t].loop);
  }
  return sum / static_cast<double>(graph.interior_tiles);
}

double per_tile_perimeter(const TilingPatch& patch) {
  return per_tile_perimeter(patch, build_graph(patch));
}

double fitted_decay_exponent(
    const std::vector<std::pair<double, double>>& ratios, double target) {
  if (ratios.size() < 2) {
    throw Error(ErrorCode::DomainViolation, "need at least two radii to fit");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ratios.size());
  for (const auto& [R, rho] : ratios) {
    const double x = std::log(R);
    const double y = std::log(std::max(std::abs(rho - target), 1e-15));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pentile
