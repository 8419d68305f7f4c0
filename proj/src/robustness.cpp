#include "placer/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "placer/quickhull.hpp"

namespace placer {

Robustness cone_line_robustness(const Vec3& r, const Vec3& e, double mu) {
  const double ru = r.x(), rv = r.y(), rn = r.z();
  const double eu = e.x(), ev = e.y(), en = e.z();

  if (rn < -1e-12) return 0.0;  // tensile reaction: not holding

  const double a = mu * mu * en * en - eu * eu - ev * ev;
  const double b = 2.0 * (mu * mu * rn * en - ru * eu - rv * ev);
  const double c = mu * mu * rn * rn - ru * ru - rv * rv;

  const double c_tol = 1e-12 * std::max(1.0, mu * mu * rn * rn + ru * ru + rv * rv);
  if (c < -c_tol) return 0.0;  // reaction outside the cone

  double disc = b * b - 4.0 * a * c;
  const double disc_tol = 1e-10 * std::max({b * b, std::abs(4.0 * a * c), 1e-30});
  if (disc < 0.0) {
    if (disc < -disc_tol) return 0.0;
    disc = 0.0;
  }

  double s;
  if (std::abs(a) > 1e-14) {
    s = (-b - std::sqrt(disc)) / (2.0 * a);
  } else if (std::abs(b) > 1e-14) {
    if (b > 0) return kInf;  // moving deeper into the cone
    s = -c / b;
  } else {
    return kInf;  // constant nonnegative margin
  }

  if (s > 1e-12) return s;
  // Root at the start point: outward motion exits immediately, inward never.
  const bool outward = (b < -1e-14) || (std::abs(b) <= 1e-14 && a < 0.0);
  return outward ? 0.0 : kInf;
}

std::optional<std::vector<TopplingAxis>> toppling_axes(const std::vector<Vec3>& positions) {
  if (positions.size() < 3) return std::nullopt;
  auto hull = quickhull(positions);
  if (!hull) return std::nullopt;
  std::vector<TopplingAxis> axes;
  for (const auto& e : hull->edges) {
    const Vec3& a = hull->vertices[e.first];
    const Vec3& b = hull->vertices[e.second];
    axes.push_back({a, b});
    axes.push_back({b, a});
  }
  return axes;
}

bool validate_axis(const TopplingAxis& axis, const std::vector<Vec3>& positions,
                   const std::vector<Vec3>& normal_forces, double mass, const Vec3& com,
                   const Vec3& gravity) {
  Vec3 a = axis.axis();
  double len = a.norm();
  if (len < 1e-12) return false;
  a /= len;

  double g_torque = (com - axis.start).cross(mass * gravity).dot(a);
  if (!(g_torque < -1e-12)) return false;

  for (std::size_t i = 0; i < positions.size(); ++i) {
    double t = (positions[i] - axis.start).cross(normal_forces[i]).dot(a);
    double scale = 1.0 + normal_forces[i].norm() * (positions[i] - axis.start).norm();
    if (t < -1e-12 * scale) return false;  // this contact resists the rotation
  }
  return true;
}

namespace {

Robustness toppling_over_axes(const std::vector<TopplingAxis>& valid_axes, double mass, const Vec3& com,
                              const Vec3& gravity, const Vec3& e_hat, const Vec3& push_point) {
  Robustness best = kInf;
  for (const auto& axis : valid_axes) {
    Vec3 a = axis.axis().normalized();
    double den = (push_point - axis.start).cross(e_hat).dot(a);
    if (den <= 1e-12) continue;  // push cannot rotate about this axis
    double num = (com - axis.start).cross(mass * gravity).dot(a);
    double s = -num / den;
    if (s > 0) best = std::min(best, s);
  }
  return best;
}

// Degenerate supports: a point or line of contact resists no toppling unless
// the push exerts no moment about it.
Robustness degenerate_toppling(const std::vector<Vec3>& positions, const Vec3& e_hat,
                               const Vec3& push_point) {
  if (positions.empty()) return 0.0;
  Vec3 k0 = positions[0];
  Vec3 dir = Vec3::Zero();
  for (const auto& p : positions) {
    if ((p - k0).norm() > 1e-9) {
      dir = (p - k0).normalized();
      break;
    }
  }
  Vec3 torque = (push_point - k0).cross(e_hat);
  if (dir.isZero()) return torque.norm() <= 1e-9 ? kInf : 0.0;
  return std::abs(torque.dot(dir)) <= 1e-9 ? kInf : 0.0;
}

}  // namespace

Robustness toppling_robustness(const std::vector<Vec3>& positions, const std::vector<Vec3>& normal_forces,
                               double mass, const Vec3& com, const Vec3& gravity, const Vec3& e_hat,
                               const Vec3& push_point) {
  auto axes = toppling_axes(positions);
  if (!axes) return degenerate_toppling(positions, e_hat, push_point);
  std::vector<TopplingAxis> valid;
  for (const auto& axis : *axes)
    if (validate_axis(axis, positions, normal_forces, mass, com, gravity)) valid.push_back(axis);
  return toppling_over_axes(valid, mass, com, gravity, e_hat, push_point);
}

std::optional<EquilibriumContext> make_equilibrium_context(const Assembly& assembly) {
  auto sys = build_equilibrium_system(assembly.body_states(), assembly.contacts(), assembly.gravity);
  if (!sys) return std::nullopt;
  auto forces = solve_reaction_forces_qr(*sys);
  if (!forces) return std::nullopt;

  EquilibriumContext ctx;
  ctx.contacts = sys->contacts;
  ctx.forces = *forces;
  ctx.per_object.resize(assembly.objects().size());
  for (std::size_t i = 0; i < ctx.contacts.size(); ++i) {
    const ContactPoint& c = ctx.contacts[i];
    double fn = ctx.forces.force_local[i].z();
    Vec3 fn_vec = fn * c.normal;
    auto attach = [&](int body, double side) {
      if (body < 0 || body >= assembly.size()) return;
      auto& view = ctx.per_object[body];
      view.contact_ids.push_back(static_cast<int>(i));
      view.positions.push_back(c.position);
      view.normal_forces.push_back(side * fn_vec);
      view.side.push_back(side);
    };
    attach(c.supported, +1.0);
    attach(c.supporting, -1.0);
  }

  for (int obj = 0; obj < assembly.size(); ++obj) {
    auto& view = ctx.per_object[obj];
    if (assembly.object(obj).fixed) continue;
    auto axes = toppling_axes(view.positions);
    if (!axes) continue;
    view.hull_axes = true;
    const auto& body = assembly.object(obj);
    for (const auto& axis : *axes)
      if (validate_axis(axis, view.positions, view.normal_forces, body.object.mass, body.com_world,
                        assembly.gravity))
        view.valid_axes.push_back(axis);
  }
  return ctx;
}

Robustness slipping_robustness(const EquilibriumContext& ctx, int object, const Vec3& e_hat) {
  const auto& view = ctx.per_object[object];
  Robustness total = 0.0;
  for (std::size_t k = 0; k < view.contact_ids.size(); ++k) {
    int i = view.contact_ids[k];
    const ContactPoint& c = ctx.contacts[i];
    // The contact transmits the push: the reaction of a supported body moves
    // along -e, that of a supporting body along +e.
    Vec3 e_local = -view.side[k] * c.to_local(e_hat);
    Robustness r = cone_line_robustness(ctx.forces.force_local[i], e_local, c.mu);
    total += r;
    if (std::isinf(total)) return kInf;
  }
  return total;
}

Robustness toppling_robustness(const EquilibriumContext& ctx, const Assembly& assembly, int object,
                               const Vec3& e_hat, const Vec3& push_point) {
  const auto& view = ctx.per_object[object];
  const auto& body = assembly.object(object);
  if (!view.hull_axes) return degenerate_toppling(view.positions, e_hat, push_point);
  return toppling_over_axes(view.valid_axes, body.object.mass, body.com_world, assembly.gravity, e_hat,
                            push_point);
}

Robustness static_robustness(const Assembly& assembly, const EquilibriumContext& ctx, int object,
                             const Vec3& p, const Vec3& e_hat) {
  if (assembly.object(object).fixed) return kInf;
  if (ctx.per_object[object].contact_ids.empty()) return 0.0;
  Robustness slip = slipping_robustness(ctx, object, e_hat);
  Robustness top = toppling_robustness(ctx, assembly, object, e_hat, p);
  return std::min(slip, top);
}

double SRMap::max_finite() const {
  double best = 0.0;
  for (const auto& s : samples)
    if (std::isfinite(s.r)) best = std::max(best, s.r);
  return best;
}

double SRMap::min_finite() const {
  double best = kInf;
  for (const auto& s : samples)
    if (std::isfinite(s.r)) best = std::min(best, s.r);
  return best;
}

std::optional<SRMap> compute_sr_map(const Assembly& assembly, double density) {
  auto ctx = make_equilibrium_context(assembly);
  if (!ctx) return std::nullopt;

  // Points covered by another body cannot realize a new contact.
  auto covered = [&](int owner, const Vec3& p) {
    for (int other = 0; other < assembly.size(); ++other) {
      if (other == owner) continue;
      const PolyMesh& m = assembly.object(other).world;
      if (!m.bounds.inflated(2 * tol::kContact).overlaps(Aabb{p, p})) continue;
      if (point_mesh_distance(p, m) <= tol::kContact || point_in_mesh(p, m)) return true;
    }
    return false;
  };

  SRMap map;
  map.density = density;
  for (int obj = 0; obj < assembly.size(); ++obj) {
    const PlacedObject& po = assembly.object(obj);
    const PolyMesh& mesh = po.world;
    for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
      const MeshFace& face = mesh.faces[fi];
      // Area-stratified quotas per triangle, remainder carried deterministically.
      double carry = 0.0;
      int emitted = 0;
      for (std::size_t k = 0; k < face.tris.size(); ++k) {
        int ti = face.tris[k];
        const auto& t = mesh.triangles[ti];
        Vec3 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        double area = 0.5 * (b - a).cross(c - a).norm();
        carry += area * density;
        int n = static_cast<int>(std::floor(carry));
        carry -= n;
        if (k + 1 == face.tris.size() && emitted + n == 0) n = 1;  // at least one sample per face
        for (int s = 0; s < n; ++s) {
          double u = hash_unit(static_cast<std::uint64_t>(obj) * 8191 + fi, ti, 2 * s);
          double v = hash_unit(static_cast<std::uint64_t>(obj) * 8191 + fi, ti, 2 * s + 1);
          if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
          }
          SRSample sample;
          sample.position = a + u * (b - a) + v * (c - a);
          ++emitted;
          if (covered(obj, sample.position)) continue;
          sample.normal = face.normal;
          sample.owner = obj;
          sample.face = static_cast<int>(fi);
          sample.fixed = po.fixed;
          sample.r = po.fixed ? kInf
                              : static_robustness(assembly, *ctx, obj, sample.position, -face.normal);
          map.samples.push_back(sample);
        }
      }
    }
  }
  return map;
}

}  // namespace placer
