#pragma once

#include <optional>

#include "placer/assembly.hpp"
#include "placer/matching.hpp"
#include "placer/robustness.hpp"

namespace placer {

// Rigid placement aligning the object points (q, r) with the scene points
// (a, b): q lands on a, the q->r direction maps onto a->b, and the feature
// normal n_obj turns into the opposition of the scene normal n_a. Empty when
// the segment is parallel to a normal (frame undefined).
std::optional<Pose> determine_pose(const Vec3& a, const Vec3& b, const Vec3& n_a, const Vec3& q,
                                   const Vec3& r, const Vec3& n_obj);

enum class RejectReason {
  Penetration,
  NoContact,
  TensionScreen,
  QPInfeasible,
  NotEquilibrated,
};

struct ValidationConfig {
  double penetration_tol = tol::kPenetration;
  double contact_tol = tol::kContact;
  double tension_threshold = 5.0;  // Newtons
  double equilibrium_tol = 1e-6;
};

struct ValidationResult {
  bool accepted = false;
  RejectReason reason = RejectReason::Penetration;
  std::vector<ContactInterface> interfaces;  // interfaces created by the object
  ForceSolution forces;                      // constrained forces of the full assembly
};

// Short-circuiting pipeline: collision, contact resolution, unconstrained
// force screen against the tension threshold, constrained solve, equilibrium
// check. No constrained solve ever runs when the screen fails.
ValidationResult validate_pose(const Pose& pose, const PolyObject& object, const Assembly& assembly,
                               const ValidationConfig& config);

}  // namespace placer
