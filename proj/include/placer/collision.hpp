#pragma once

#include <vector>

#include "placer/mesh.hpp"
#include "placer/statics.hpp"

namespace placer {

// True when the meshes interpenetrate deeper than `penetration_tol`:
// a transversal triangle-triangle crossing, or a sample point of one mesh
// buried inside the other beyond the tolerance. Touching is not a collision.
bool detect_collisions(const PolyMesh& a, const PolyMesh& b, double penetration_tol = tol::kPenetration);

// Distance from a point to the triangulated surface.
double point_mesh_distance(const Vec3& p, const PolyMesh& mesh);

// Parity ray cast; points on the surface are classified as outside.
bool point_in_mesh(const Vec3& p, const PolyMesh& mesh);

// Resting interface between two bodies.
struct ContactInterface {
  enum class Kind { FaceFace, FaceEdge, EdgeEdge };
  Kind kind = Kind::FaceFace;
  int supporting = -1;
  int supported = -1;
  Vec3 normal{0, 0, 1};        // from supporting body into supported body
  std::vector<Vec3> corners;   // polygon corners / segment ends / single point
  double mu = 0.5;
};

// All interfaces where body A rests against body B (either direction):
// face-face overlap polygons, face-edge segments, edge-edge points.
// `ga` is the gravity direction used to orient supporting/supported.
std::vector<ContactInterface> resolve_contacts(const PolyMesh& a, int body_a, double mu_a,
                                               const PolyMesh& b, int body_b, double mu_b,
                                               const Vec3& gravity,
                                               double contact_tol = tol::kContact);

// Corner contact points of a set of interfaces, deduplicated by position.
std::vector<ContactPoint> interface_contact_points(const std::vector<ContactInterface>& interfaces);

}  // namespace placer
