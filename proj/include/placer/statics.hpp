#pragma once

#include <map>
#include <optional>
#include <vector>

#include "placer/core.hpp"
#include "placer/geometry.hpp"

namespace placer {

// Point contact joining two bodies. The normal points from the supporting
// body into the supported one; (u, v, normal) is right-handed orthonormal.
struct ContactPoint {
  Vec3 position{0, 0, 0};
  Vec3 normal{0, 0, 1};
  Vec3 u{1, 0, 0}, v{0, 1, 0};
  double mu = 0.5;
  int supporting = -1;
  int supported = -1;

  static ContactPoint make(const Vec3& position, const Vec3& normal, double mu, int supporting,
                           int supported) {
    ContactPoint c;
    c.position = position;
    c.normal = normal.normalized();
    auto [tu, tv] = tangent_basis(c.normal);
    c.u = tu;
    c.v = tv;
    c.mu = mu;
    c.supporting = supporting;
    c.supported = supported;
    return c;
  }

  Vec3 to_local(const Vec3& w) const { return {u.dot(w), v.dot(w), normal.dot(w)}; }
  Vec3 to_world(const Vec3& l) const { return l.x() * u + l.y() * v + l.z() * normal; }
};

// Mass properties of one body in world frame.
struct BodyState {
  double mass = 1.0;
  Vec3 com{0, 0, 0};
  bool fixed = false;
};

// Stacked equilibrium equations A f = b: one 6-row block (force, torque about
// the world origin) per non-fixed body, three force columns per contact.
// A contact enters the supported body's block with + sign and a non-fixed
// supporting body's block with - sign.
struct EquilibriumSystem {
  MatX A;
  VecX b;
  std::vector<ContactPoint> contacts;
  std::map<int, int> block_of_body;  // body index -> block index
  double weight_scale = 1.0;         // total gravity force magnitude
};

struct ForceSolution {
  std::vector<Vec3> force_world;  // reaction on the supported body, per contact
  std::vector<Vec3> force_local;  // (f_u, f_v, f_n)
  double residual = 0.0;          // ||A f - b||
  double max_tension = 0.0;       // max over contacts of (-f_n)+
  double friction_violation = 0.0;
  double objective = 0.0;  // 0.5 f^T f
};

// Empty when a non-fixed body has no contact to bear its weight.
std::optional<EquilibriumSystem> build_equilibrium_system(const std::vector<BodyState>& bodies,
                                                          std::vector<ContactPoint> contacts,
                                                          const Vec3& gravity);

// Minimal two-norm reaction forces via a rank-revealing QR of A^T. Empty when
// b is not in the range of A (residual above 1e-6 x total weight).
std::optional<ForceSolution> solve_reaction_forces_qr(const EquilibriumSystem& sys);

// Constrained forces: equality A f = b, non-tension f_n >= 0, and the
// four-sided friction pyramid |f_u| + |f_v| <= mu f_n. Empty when infeasible.
std::optional<ForceSolution> solve_reaction_forces_qp(const EquilibriumSystem& sys);

double max_tension(const ForceSolution& sol);

bool check_equilibrium(const ForceSolution& sol, double tolerance);

}  // namespace placer
