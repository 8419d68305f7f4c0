#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "placer/core.hpp"

namespace placer {

// Convex hull of a 3D point set. For coplanar inputs (the usual case for
// contact points on a support plane) the hull degenerates to the boundary
// polygon and `planar` is set; `edges` then lists consecutive boundary pairs.
struct ConvexHull {
  std::vector<Vec3> vertices;
  std::vector<std::pair<int, int>> edges;  // indices into vertices, each undirected edge once
  bool planar = false;
};

// Empty result when fewer than 3 distinct points are given or all points are
// collinear.
std::optional<ConvexHull> quickhull(const std::vector<Vec3>& points);

}  // namespace placer
