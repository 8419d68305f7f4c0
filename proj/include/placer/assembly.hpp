#pragma once

#include <string>
#include <vector>

#include "placer/collision.hpp"
#include "placer/mesh.hpp"
#include "placer/statics.hpp"

namespace placer {

// Rigid body description in its own frame.
struct PolyObject {
  std::string name;
  PolyMesh mesh;
  double mass = 1.0;
  Vec3 com{0, 0, 0};
  double mu = 0.5;
};

struct PlacedObject {
  PolyObject object;
  Pose pose;
  bool fixed = false;
  PolyMesh world;  // cached world-frame geometry
  Vec3 com_world{0, 0, 0};
};

// Posed objects plus the resolved contact graph between them.
class Assembly {
 public:
  Vec3 gravity{0, 0, -9.81};

  int add(PolyObject object, const Pose& pose, bool fixed);

  const std::vector<PlacedObject>& objects() const { return objects_; }
  const PlacedObject& object(int i) const { return objects_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(objects_.size()); }

  // Recomputes all pairwise contact interfaces. Called by add(); exposed for
  // tolerance overrides.
  void rebuild_contacts(double contact_tol = tol::kContact);

  const std::vector<ContactInterface>& interfaces() const { return interfaces_; }
  const std::vector<ContactPoint>& contacts() const { return contacts_; }

  std::vector<BodyState> body_states() const;

  // Bounding box over non-fixed objects; falls back to everything when none.
  Aabb bounds(bool include_fixed = false) const;
  Vec3 scene_centroid() const;
  double scene_scale() const;  // bounding sphere radius around the centroid

  double total_non_fixed_surface_area() const;

 private:
  std::vector<PlacedObject> objects_;
  std::vector<ContactInterface> interfaces_;
  std::vector<ContactPoint> contacts_;
};

// Oriented-bounding-box volume of the non-fixed objects (principal axes of
// the vertex cloud; an estimate, not the minimal box).
double assembly_obb_volume(const Assembly& assembly);

}  // namespace placer
