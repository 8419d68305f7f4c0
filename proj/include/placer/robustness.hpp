#pragma once

#include <optional>
#include <vector>

#include "placer/assembly.hpp"
#include "placer/statics.hpp"

namespace placer {

// Force magnitude in Newtons; kInf marks "cannot be destabilized".
using Robustness = double;

// Largest multiple s of the local push direction e that keeps r + s*e inside
// the friction cone of opening tan(theta) = mu. Both vectors are expressed in
// the contact frame (u, v, n). Returns 0 when the reaction already violates
// the cone and kInf when the ray never leaves it.
Robustness cone_line_robustness(const Vec3& r_local, const Vec3& e_local, double mu);

struct TopplingAxis {
  Vec3 start{0, 0, 0};
  Vec3 end{0, 0, 0};
  Vec3 axis() const { return end - start; }
};

// Candidate rotation axes: edges of the convex hull of the contact points,
// both orientations. Empty when fewer than 3 non-collinear points exist.
std::optional<std::vector<TopplingAxis>> toppling_axes(const std::vector<Vec3>& positions);

// An axis is a feasible toppling pivot when no contact's normal force resists
// rotation about it and gravity exerts a restoring (negative) torque.
bool validate_axis(const TopplingAxis& axis, const std::vector<Vec3>& positions,
                   const std::vector<Vec3>& normal_forces, double mass, const Vec3& com,
                   const Vec3& gravity);

// Force along e_hat at point p that exactly cancels gravity's restoring
// torque, minimized over the valid axes. Fewer than three contacts can resist
// no lateral push (robustness 0) unless the push has no moment about the
// support, which yields kInf.
Robustness toppling_robustness(const std::vector<Vec3>& positions, const std::vector<Vec3>& normal_forces,
                               double mass, const Vec3& com, const Vec3& gravity, const Vec3& e_hat,
                               const Vec3& push_point);

// Frozen force state of an assembly: the fast unconstrained force solution
// plus per-object contact views and pre-validated toppling axes.
struct ObjectContactView {
  std::vector<int> contact_ids;
  std::vector<Vec3> positions;
  std::vector<Vec3> normal_forces;   // normal force vector acting on this object
  std::vector<double> side;          // -1 when the object is the supported body
  std::vector<TopplingAxis> valid_axes;
  bool hull_axes = false;            // enough contacts for hull-based axes
};

struct EquilibriumContext {
  std::vector<ContactPoint> contacts;
  ForceSolution forces;
  std::vector<ObjectContactView> per_object;
};

// Empty when the assembly admits no unconstrained equilibrium.
std::optional<EquilibriumContext> make_equilibrium_context(const Assembly& assembly);

Robustness slipping_robustness(const EquilibriumContext& ctx, int object, const Vec3& e_hat);
Robustness toppling_robustness(const EquilibriumContext& ctx, const Assembly& assembly, int object,
                               const Vec3& e_hat, const Vec3& push_point);

// min of slipping and toppling robustness; kInf for fixed objects, 0 for an
// object without contacts.
Robustness static_robustness(const Assembly& assembly, const EquilibriumContext& ctx, int object,
                             const Vec3& p, const Vec3& e_hat);

struct SRSample {
  Vec3 position{0, 0, 0};
  Vec3 normal{0, 0, 1};
  int owner = -1;
  int face = -1;
  bool fixed = false;
  Robustness r = 0.0;
};

struct SRMap {
  std::vector<SRSample> samples;
  double density = 0.0;

  double max_finite() const;
  double min_finite() const;  // kInf when no finite sample exists
};

// Deterministic surface sampling (area-stratified, hash-jittered) with the
// robustness of an inward normal push at every sample. Empty when the
// assembly is not in equilibrium.
std::optional<SRMap> compute_sr_map(const Assembly& assembly, double density = 200.0);

}  // namespace placer
