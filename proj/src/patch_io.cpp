#include "pentile/patch_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pentile {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
  }
  out << content;
}

}  // namespace

std::string patch_to_json(const TilingPatch& patch) {
  std::ostringstream out;
  out << "{\n  \"window_radius\": " << fmt17(patch.window_radius)
      << ",\n  \"tiles\": [";
  for (size_t t = 0; t < patch.tiles.size(); ++t) {
    const auto& tile = patch.tiles[t];
    out << (t == 0 ? "\n" : ",\n");
    out << "    {\"kind\": \"" << tile_kind_name(tile.kind)
        << "\", \"vertices\": [";
    for (size_t i = 0; i < tile.loop.size(); ++i) {
      if (i) out << ", ";
      out << "[" << fmt17(tile.loop[i].x) << ", " << fmt17(tile.loop[i].y)
          << "]";
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

void write_patch(const TilingPatch& patch, const std::string& path) {
  write_file(path, patch_to_json(patch));
}

TilingPatch patch_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid json: ") + e.what());
  }
  try {
    TilingPatch patch;
    patch.window_radius = doc.at("window_radius").get<double>();
    for (const auto& jt : doc.at("tiles")) {
      PlacedTile tile;
      const std::string kind = jt.at("kind").get<std::string>();
      if (kind == "cairo") {
        tile.kind = TileKind::Cairo;
      } else if (kind == "prismatic") {
        tile.kind = TileKind::Prismatic;
      } else {
        throw Error(ErrorCode::ParseError, "unknown tile kind '" + kind + "'");
      }
      const auto& verts = jt.at("vertices");
      if (verts.size() != 5) {
        throw Error(ErrorCode::ParseError,
                    "tile must have 5 vertices, got " +
                        std::to_string(verts.size()));
      }
      for (const auto& jv : verts) {
        if (jv.size() != 2) {
          throw Error(ErrorCode::ParseError, "vertex must be [x, y]");
        }
        tile.loop.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
      }
      patch.tiles.push_back(std::move(tile));
    }
    return patch;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError,
                std::string("patch document malformed: ") + e.what());
  }
}

TilingPatch read_patch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return patch_from_json(buf.str());
}

std::string patch_to_svg(const TilingPatch& patch) {
  const double R = patch.window_radius > 0.0 ? patch.window_radius : 1.0;
  const double margin = 1.0;
  const double lo = -(R + margin), size = 2.0 * (R + margin);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"800\" height=\"800\" viewBox=\"" << fmt6(lo) << " "
      << fmt6(lo) << " " << fmt6(size) << " " << fmt6(size) << "\">\n";
  out << "  <g stroke=\"#333333\" stroke-width=\"0.02\" "
         "stroke-linejoin=\"round\">\n";
  for (const auto& tile : patch.tiles) {
    const char* fill =
        tile.kind == TileKind::Cairo ? "#9ec5e8" : "#f2c777";
    out << "    <path fill=\"" << fill << "\" d=\"";
    for (size_t i = 0; i < tile.loop.size(); ++i) {
      out << (i == 0 ? "M" : " L") << fmt6(tile.loop[i].x) << ","
          << fmt6(-tile.loop[i].y);  // svg y grows downward
    }
    out << " Z\"/>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

void write_svg(const TilingPatch& patch, const std::string& path) {
  write_file(path, patch_to_svg(patch));
}

std::string polygon_to_svg(const ConvexPolygon& poly, double incircle_radius) {
  double extent = incircle_radius;
  for (const Vec2& v : poly.vertices()) {
    extent = std::max({extent, std::abs(v.x), std::abs(v.y)});
  }
  const double lo = -(extent + 0.2), size = 2.0 * (extent + 0.2);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"600\" height=\"600\" viewBox=\"" << fmt6(lo) << " "
      << fmt6(lo) << " " << fmt6(size) << " " << fmt6(size) << "\">\n";
  out << "  <path fill=\"#d9e8f5\" stroke=\"#333333\" stroke-width=\"0.01\" "
         "d=\"";
  const auto& vs = poly.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    out << (i == 0 ? "M" : " L") << fmt6(vs[i].x) << "," << fmt6(-vs[i].y);
  }
  out << " Z\"/>\n";
  out << "  <circle cx=\"0\" cy=\"0\" r=\"" << fmt6(incircle_radius)
      << "\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"0.01\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace pentile
