#pragma once

#include <iosfwd>
#include <string>

#include "pentile/tiling.hpp"

namespace pentile {

// Patch persistence: {"window_radius": r, "tiles": [{"kind": "cairo" |
// "prismatic", "vertices": [[x, y] x 5]}]} with coordinates printed to 17
// significant digits. Output is deterministic; write/read round-trips
// bit-exactly.
std::string patch_to_json(const TilingPatch& patch);
void write_patch(const TilingPatch& patch, const std::string& path);

// Throws ParseError on malformed input. Does not validate the patch.
TilingPatch patch_from_json(const std::string& text);
TilingPatch read_patch(const std::string& path);

// One closed path per tile, Cairo and Prismatic in two fill colors, viewBox
// fitted to the window disc. Deterministic output.
std::string patch_to_svg(const TilingPatch& patch);
void write_svg(const TilingPatch& patch, const std::string& path);

// Figure-style rendering of a unit-area polygon with its incircle.
std::string polygon_to_svg(const ConvexPolygon& poly, double incircle_radius);

}  // namespace pentile
