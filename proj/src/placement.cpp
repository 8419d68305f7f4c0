#include "placer/placement.hpp"

namespace placer {

std::optional<Pose> determine_pose(const Vec3& a, const Vec3& b, const Vec3& n_a, const Vec3& q,
                                   const Vec3& r, const Vec3& n_obj) {
  Vec3 ab = a - b;
  Vec3 qr = q - r;
  double lab = ab.norm(), lqr = qr.norm();
  if (lab < 1e-12 || lqr < 1e-12) return std::nullopt;

  Vec3 u_w = ab.cross(n_a);
  Vec3 u_o = -qr.cross(n_obj);
  if (u_w.norm() < 1e-9 || u_o.norm() < 1e-9) return std::nullopt;
  u_w.normalize();
  u_o.normalize();

  Vec3 w_w = u_w.cross(ab).normalized();
  Vec3 w_o = u_o.cross(qr).normalized();

  Mat3 frame_scene, frame_object;
  frame_scene.col(0) = u_w;
  frame_scene.col(1) = ab / lab;
  frame_scene.col(2) = w_w;
  frame_object.col(0) = u_o;
  frame_object.col(1) = qr / lqr;
  frame_object.col(2) = w_o;

  Mat3 R = frame_scene * frame_object.transpose();
  return Pose{R, a - R * q};
}

ValidationResult validate_pose(const Pose& pose, const PolyObject& object, const Assembly& assembly,
                               const ValidationConfig& config) {
  ValidationResult result;
  PolyMesh posed = object.mesh.transformed(pose);
  const int new_body = assembly.size();

  for (int i = 0; i < assembly.size(); ++i) {
    if (detect_collisions(posed, assembly.object(i).world, config.penetration_tol)) {
      result.reason = RejectReason::Penetration;
      return result;
    }
  }

  for (int i = 0; i < assembly.size(); ++i) {
    auto found = resolve_contacts(posed, new_body, object.mu, assembly.object(i).world, i,
                                  assembly.object(i).object.mu, assembly.gravity, config.contact_tol);
    for (auto& ci : found) result.interfaces.push_back(std::move(ci));
  }
  if (result.interfaces.empty()) {
    result.reason = RejectReason::NoContact;
    return result;
  }

  std::vector<BodyState> bodies = assembly.body_states();
  bodies.push_back({object.mass, pose.apply(object.com), false});
  std::vector<ContactPoint> contacts = assembly.contacts();
  for (const auto& c : interface_contact_points(result.interfaces)) contacts.push_back(c);

  auto sys = build_equilibrium_system(bodies, std::move(contacts), assembly.gravity);
  if (!sys) {
    result.reason = RejectReason::NoContact;
    return result;
  }

  auto screen = solve_reaction_forces_qr(*sys);
  if (!screen || max_tension(*screen) > config.tension_threshold) {
    result.reason = RejectReason::TensionScreen;
    return result;
  }

  auto constrained = solve_reaction_forces_qp(*sys);
  if (!constrained) {
    result.reason = RejectReason::QPInfeasible;
    return result;
  }
  if (!check_equilibrium(*constrained, config.equilibrium_tol)) {
    result.reason = RejectReason::NotEquilibrated;
    return result;
  }

  result.accepted = true;
  result.forces = *constrained;
  return result;
}

}  // namespace placer
