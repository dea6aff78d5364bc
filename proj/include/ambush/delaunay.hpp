#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "ambush/geometry.hpp"

namespace ambush {

// Vertex indices into the input point list, counter-clockwise.
using Triangle = std::array<int, 3>;

// Sign of the orientation determinant of (a, b, c), evaluated exactly:
// +1 counter-clockwise, -1 clockwise, 0 collinear.
int orient2d(Vec2 a, Vec2 b, Vec2 c);

// Exact sign of the incircle determinant: +1 when d is strictly inside the
// circle through the counter-clockwise triangle (a, b, c).
int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// Bowyer-Watson Delaunay triangulation with exact predicates. Points are
// inserted in input order; exact duplicates are skipped. Cocircular ties keep
// the existing triangles, so every output triangle has an empty open
// circumcircle. Triangles are rotated so the smallest index comes first and
// returned sorted. Throws kDegenerateInput for fewer than three distinct
// points or an all-collinear input.
std::vector<Triangle> delaunay(std::span<const Vec2> points);

// Unique undirected edges (lo, hi) of a triangle list, sorted.
std::vector<std::pair<int, int>> triangulation_edges(std::span<const Triangle> triangles);

}  // namespace ambush
