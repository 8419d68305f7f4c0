#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "placer/geometry.hpp"

namespace placer {

struct Aabb {
  Vec3 min{kInf, kInf, kInf};
  Vec3 max{-kInf, -kInf, -kInf};

  void grow(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  Aabb inflated(double r) const { return {min.array() - r, max.array() + r}; }
  bool overlaps(const Aabb& o) const {
    return (min.array() <= o.max.array()).all() && (o.min.array() <= max.array()).all();
  }
  Vec3 center() const { return 0.5 * (min + max); }
};

// Maximal planar region of the triangulation.
struct MeshFace {
  Vec3 normal{0, 0, 1};  // outward unit normal
  double offset = 0.0;   // normal.dot(p) == offset on the face plane
  std::vector<int> tris;
  std::vector<std::vector<int>> loops;  // boundary loops (vertex indices), outer loop first
  double area = 0.0;
  bool convex = false;  // single convex boundary loop

  Plane plane() const { return Plane{normal, offset}; }
};

// Edge between two non-coplanar faces. The direction is oriented so that both
// side vectors point from the edge into their face's interior.
struct FeatureEdge {
  Vec3 p0{0, 0, 0}, p1{0, 0, 0};
  Vec3 dir{1, 0, 0};  // unit, p1 = p0 + length*dir
  double length = 0.0;
  int f1 = -1, f2 = -1;
  Vec3 n1{0, 0, 1}, n2{0, 0, 1};  // adjacent face normals
  Vec3 s1{0, 1, 0}, s2{0, 1, 0};  // side vectors, into face f1 / f2

  Line line() const { return Line{p0, dir}; }
  Vec3 pseudo_normal() const { return (n1 + n2).normalized(); }
};

// Watertight triangle mesh with merged planar faces and feature edges.
// Immutable after construction.
struct PolyMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<MeshFace> faces;
  std::vector<FeatureEdge> edges;
  Aabb bounds;

  double volume() const;
  Vec3 centroid() const;
  double circumradius(const Vec3& about) const;

  // Point membership in the bounded face polygon (plane residual + 2D test).
  bool point_on_face(int face, const Vec3& p, double plane_tol = 1e-6) const;

  PolyMesh transformed(const Pose& pose) const;
};

// Builds faces/edges and validates watertightness and orientability.
// Throws std::runtime_error on invalid input. Triangle winding is flipped
// globally if the signed volume comes out negative.
PolyMesh make_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

PolyMesh load_obj(const std::string& path);
void save_obj(const PolyMesh& mesh, const std::string& path);

// Primitive generators (all centered as documented, watertight, outward).
PolyMesh make_box(const Vec3& extents);  // centered at the origin
PolyMesh make_uv_sphere(double radius, int vertex_budget);
// Hemispherical shell, opening up, resting plane at z=0, flattened bottom.
PolyMesh make_bowl(double radius, int vertex_budget);
// Extrusion of a simple CCW polygon in the xz-plane along y.
PolyMesh make_extrusion(const std::vector<Vec2>& profile_xz, double y0, double y1);

}  // namespace placer
