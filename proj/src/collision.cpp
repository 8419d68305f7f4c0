#include "placer/collision.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace placer {

namespace {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return ap.norm();
  Vec3 bp = p - b;
  double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return bp.norm();
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return (ap - d1 / (d1 - d3) * ab).norm();
  Vec3 cp = p - c;
  double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return cp.norm();
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return (ap - d2 / (d2 - d6) * ac).norm();
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + w * (c - b))).norm();
  }
  double denom = 1.0 / (va + vb + vc);
  Vec3 closest = a + (vb * denom) * ab + (vc * denom) * ac;
  return (p - closest).norm();
}

struct RayHit {
  bool hit = false;
  bool clean = true;
  double t = 0;
};

RayHit ray_triangle(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b, const Vec3& c) {
  RayHit r;
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 pv = d.cross(e2);
  double det = e1.dot(pv);
  if (std::abs(det) < 1e-12) {
    r.clean = false;
    return r;
  }
  double inv = 1.0 / det;
  Vec3 tv = o - a;
  double u = tv.dot(pv) * inv;
  Vec3 qv = tv.cross(e1);
  double v = d.dot(qv) * inv;
  double t = e2.dot(qv) * inv;
  const double eps = 1e-10;
  if (u < -eps || v < -eps || u + v > 1 + eps || t <= 1e-12) return r;
  if (u < eps || v < eps || u + v > 1 - eps || t < 1e-9) r.clean = false;
  r.hit = true;
  r.t = t;
  return r;
}

// Transversal crossing of two triangles: both straddle the other's plane by
// more than `tolp` and the intersection intervals on the common line overlap.
bool tri_tri_crossing(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& b0, const Vec3& b1,
                      const Vec3& b2, double tolp) {
  Vec3 na = (a1 - a0).cross(a2 - a0);
  double lna = na.norm();
  Vec3 nb = (b1 - b0).cross(b2 - b0);
  double lnb = nb.norm();
  if (lna < 1e-14 || lnb < 1e-14) return false;
  na /= lna;
  nb /= lnb;

  auto interval = [&](const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& n, double d,
                      const Vec3& axis) -> std::optional<std::pair<double, double>> {
    double s0 = n.dot(p0) - d, s1 = n.dot(p1) - d, s2 = n.dot(p2) - d;
    bool pos = s0 > tolp || s1 > tolp || s2 > tolp;
    bool neg = s0 < -tolp || s1 < -tolp || s2 < -tolp;
    if (!pos || !neg) return std::nullopt;
    // Parameters along `axis` where the triangle edges cross the plane.
    const Vec3 pts[3] = {p0, p1, p2};
    const double ss[3] = {s0, s1, s2};
    double lo = kInf, hi = -kInf;
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3;
      if ((ss[i] > 0) == (ss[j] > 0)) continue;
      double f = ss[i] / (ss[i] - ss[j]);
      Vec3 x = pts[i] + f * (pts[j] - pts[i]);
      double tproj = axis.dot(x);
      lo = std::min(lo, tproj);
      hi = std::max(hi, tproj);
    }
    if (!(lo < hi || lo == hi)) return std::nullopt;
    return std::make_pair(lo, hi);
  };

  Vec3 axis = na.cross(nb);
  double axis_len = axis.norm();
  if (axis_len < 1e-9) return false;  // parallel planes: coplanar touch, not a crossing
  axis /= axis_len;

  auto ia = interval(a0, a1, a2, nb, nb.dot(b0), axis);
  if (!ia) return false;
  auto ib = interval(b0, b1, b2, na, na.dot(a0), axis);
  if (!ib) return false;
  double lo = std::max(ia->first, ib->first);
  double hi = std::min(ia->second, ib->second);
  return hi - lo > tolp;
}

Aabb tri_bounds(const Vec3& a, const Vec3& b, const Vec3& c) {
  Aabb box;
  box.grow(a);
  box.grow(b);
  box.grow(c);
  return box;
}

}  // namespace

double point_mesh_distance(const Vec3& p, const PolyMesh& mesh) {
  double best = kInf;
  for (const auto& t : mesh.triangles)
    best = std::min(best, point_triangle_distance(p, mesh.vertices[t[0]], mesh.vertices[t[1]],
                                                  mesh.vertices[t[2]]));
  return best;
}

bool point_in_mesh(const Vec3& p, const PolyMesh& mesh) {
  if (!(p.array() >= mesh.bounds.min.array()).all() || !(p.array() <= mesh.bounds.max.array()).all())
    return false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec3 dir(hash_unit(17, attempt, 1) - 0.5, hash_unit(17, attempt, 2) - 0.5,
             hash_unit(17, attempt, 3) - 0.5);
    if (dir.norm() < 1e-3) continue;
    dir.normalize();
    int crossings = 0;
    bool clean = true;
    for (const auto& t : mesh.triangles) {
      RayHit h = ray_triangle(p, dir, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
      if (!h.clean) {
        clean = false;
        break;
      }
      if (h.hit) ++crossings;
    }
    if (clean) return (crossings % 2) == 1;
  }
  return false;
}

bool detect_collisions(const PolyMesh& a, const PolyMesh& b, double penetration_tol) {
  if (!a.bounds.inflated(penetration_tol).overlaps(b.bounds)) return false;

  Aabb common = a.bounds.inflated(penetration_tol);
  for (const auto& ta : a.triangles) {
    Aabb box_a = tri_bounds(a.vertices[ta[0]], a.vertices[ta[1]], a.vertices[ta[2]]).inflated(penetration_tol);
    if (!box_a.overlaps(b.bounds)) continue;
    for (const auto& tb : b.triangles) {
      Aabb box_b = tri_bounds(b.vertices[tb[0]], b.vertices[tb[1]], b.vertices[tb[2]]);
      if (!box_a.overlaps(box_b)) continue;
      if (tri_tri_crossing(a.vertices[ta[0]], a.vertices[ta[1]], a.vertices[ta[2]], b.vertices[tb[0]],
                           b.vertices[tb[1]], b.vertices[tb[2]], penetration_tol))
        return true;
    }
  }

  auto buried = [&](const PolyMesh& host, const Vec3& p) {
    return point_mesh_distance(p, host) > penetration_tol && point_in_mesh(p, host);
  };
  auto any_buried = [&](const PolyMesh& probe, const PolyMesh& host) {
    for (const auto& v : probe.vertices)
      if (buried(host, v)) return true;
    for (const auto& e : probe.edges)
      if (buried(host, 0.5 * (e.p0 + e.p1))) return true;
    for (const auto& f : probe.faces) {
      // A point certainly on the face: the centroid of its largest triangle
      // (the loop-vertex mean can fall into a hole of an annular face).
      double best_area = -1.0;
      Vec3 c = Vec3::Zero();
      for (int ti : f.tris) {
        const auto& t = probe.triangles[ti];
        const Vec3& a = probe.vertices[t[0]];
        const Vec3& b = probe.vertices[t[1]];
        const Vec3& d = probe.vertices[t[2]];
        double area = 0.5 * (b - a).cross(d - a).norm();
        if (area > best_area) {
          best_area = area;
          c = (a + b + d) / 3.0;
        }
      }
      if (buried(host, c)) return true;
    }
    return false;
  };
  (void)common;
  return any_buried(a, b) || any_buried(b, a);
}

// ---------------------------------------------------------------------------
// Contact resolution
// ---------------------------------------------------------------------------

namespace {

struct Frame2 {
  Vec3 origin, ux, uy;
  Vec2 to2(const Vec3& p) const {
    Vec3 r = p - origin;
    return {r.dot(ux), r.dot(uy)};
  }
  Vec3 to3(const Vec2& p) const { return origin + p.x() * ux + p.y() * uy; }
};

Frame2 face_frame(const MeshFace& f) {
  Vec3 ux = any_perpendicular(f.normal);
  return Frame2{f.offset * f.normal, ux, f.normal.cross(ux)};
}

double poly_area2(const std::vector<Vec2>& poly) {
  double acc = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    acc += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * acc;
}

// Sutherland-Hodgman; clip polygon must be convex CCW.
std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clip) {
  const double eps = 1e-12;
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Vec2& a = clip[i];
    const Vec2& b = clip[(i + 1) % clip.size()];
    Vec2 dir = b - a;
    auto side = [&](const Vec2& p) { return dir.x() * (p.y() - a.y()) - dir.y() * (p.x() - a.x()); };
    std::vector<Vec2> out;
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Vec2& p = subject[j];
      const Vec2& q = subject[(j + 1) % subject.size()];
      double sp = side(p), sq = side(q);
      if (sp >= -eps) out.push_back(p);
      if ((sp > eps && sq < -eps) || (sp < -eps && sq > eps)) {
        double f = sp / (sp - sq);
        out.push_back(p + f * (q - p));
      }
    }
    subject = std::move(out);
  }
  return subject;
}

std::vector<Vec2> dedupe_poly(const std::vector<Vec2>& poly, double eps = 1e-9) {
  std::vector<Vec2> out;
  for (const auto& p : poly) {
    bool dup = false;
    for (const auto& q : out)
      if ((p - q).norm() <= eps) dup = true;
    if (!dup) out.push_back(p);
  }
  return out;
}

std::vector<Vec2> loop2(const PolyMesh& mesh, const MeshFace& f, const Frame2& fr) {
  std::vector<Vec2> out;
  for (int vi : f.loops[0]) out.push_back(fr.to2(mesh.vertices[vi]));
  if (poly_area2(out) < 0) std::reverse(out.begin(), out.end());
  return out;
}

bool point_in_poly2(const Vec2& p, const std::vector<Vec2>& poly, double eps) {
  bool strictly_inside = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    Vec2 d = b - a;
    double s = d.x() * (p.y() - a.y()) - d.y() * (p.x() - a.x());
    if (s < eps) strictly_inside = false;
  }
  return strictly_inside;
}

// sigma expressed as a nonnegative combination of the edge side vectors.
bool dir_in_side_cone(const FeatureEdge& e, const Vec3& sigma, double slack) {
  double a11 = e.s1.dot(e.s1), a12 = e.s1.dot(e.s2), a22 = e.s2.dot(e.s2);
  double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-12) return false;
  double b1 = e.s1.dot(sigma), b2 = e.s2.dot(sigma);
  double alpha = (a22 * b1 - a12 * b2) / det;
  double beta = (a11 * b2 - a12 * b1) / det;
  return alpha >= -slack && beta >= -slack;
}

struct PairKey {
  int fa, fb;
  bool operator<(const PairKey& o) const { return fa < o.fa || (fa == o.fa && fb < o.fb); }
};

}  // namespace

std::vector<ContactInterface> resolve_contacts(const PolyMesh& a, int body_a, double mu_a,
                                               const PolyMesh& b, int body_b, double mu_b,
                                               const Vec3& gravity, double contact_tol) {
  std::vector<ContactInterface> out;
  if (!a.bounds.inflated(4 * contact_tol).overlaps(b.bounds)) return out;
  const double cos_afford = std::cos(tol::kAffordAngleDeg * M_PI / 180.0);
  const double mu = std::min(mu_a, mu_b);
  std::vector<PairKey> matched_faces;

  // Face-face overlap polygons.
  for (std::size_t ia = 0; ia < a.faces.size(); ++ia) {
    const MeshFace& fa = a.faces[ia];
    for (std::size_t ib = 0; ib < b.faces.size(); ++ib) {
      const MeshFace& fb = b.faces[ib];
      if (fa.normal.dot(fb.normal) > -cos_afford) continue;
      // Opposed planes: points of fb satisfy fa.normal.dot(p) ~ -fb.offset.
      double gap = std::abs(fa.offset + fb.offset);
      if (gap > contact_tol) continue;

      Frame2 fr = face_frame(fa);
      std::vector<Vec2> corners2;
      if (fa.convex && fb.convex) {
        auto pa = loop2(a, fa, fr);
        auto pb = loop2(b, fb, fr);
        corners2 = dedupe_poly(clip_convex(pa, pb));
      } else {
        // Clip triangle by triangle and keep union boundary vertices.
        std::vector<std::vector<Vec2>> pieces;
        for (int ta : fa.tris) {
          std::vector<Vec2> sub;
          for (int k = 0; k < 3; ++k) sub.push_back(fr.to2(a.vertices[a.triangles[ta][k]]));
          if (poly_area2(sub) < 0) std::reverse(sub.begin(), sub.end());
          for (int tb : fb.tris) {
            std::vector<Vec2> clip;
            for (int k = 0; k < 3; ++k) clip.push_back(fr.to2(b.vertices[b.triangles[tb][k]]));
            if (poly_area2(clip) < 0) std::reverse(clip.begin(), clip.end());
            auto piece = dedupe_poly(clip_convex(sub, clip));
            if (piece.size() >= 3 && std::abs(poly_area2(piece)) > 1e-12) pieces.push_back(piece);
          }
        }
        std::vector<Vec2> all;
        for (const auto& piece : pieces)
          for (const auto& p : piece) all.push_back(p);
        all = dedupe_poly(all);
        for (const auto& p : all) {
          bool interior = false;
          for (const auto& piece : pieces)
            if (point_in_poly2(p, piece, 1e-9)) interior = true;
          if (!interior) corners2.push_back(p);
        }
      }
      if (corners2.size() < 2) continue;
      if (corners2.size() >= 3 && std::abs(poly_area2(corners2)) < 1e-12) {
        // Degenerate sliver: keep the two extreme points.
        auto [mn, mx] = std::minmax_element(corners2.begin(), corners2.end(),
                                            [](const Vec2& p, const Vec2& q) {
                                              return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
                                            });
        corners2 = {*mn, *mx};
      }

      ContactInterface ci;
      ci.kind = ContactInterface::Kind::FaceFace;
      ci.mu = mu;
      bool a_supports;
      double ga = fa.normal.dot(gravity), gb = fb.normal.dot(gravity);
      if (std::abs(ga - gb) < 1e-12)
        a_supports = body_a < body_b;
      else
        a_supports = ga < gb;
      ci.normal = a_supports ? fa.normal : fb.normal;
      ci.supporting = a_supports ? body_a : body_b;
      ci.supported = a_supports ? body_b : body_a;
      for (const auto& p : corners2) ci.corners.push_back(fr.to3(p));
      out.push_back(std::move(ci));
      matched_faces.push_back({static_cast<int>(ia), static_cast<int>(ib)});
    }
  }

  auto face_face_matched = [&](int fa_idx, int fb_idx) {
    return std::find_if(matched_faces.begin(), matched_faces.end(), [&](const PairKey& k) {
             return k.fa == fa_idx && k.fb == fb_idx;
           }) != matched_faces.end();
  };

  // Face-edge line contacts: edge of one body resting in a face plane of the other.
  auto edge_on_face = [&](const PolyMesh& em, int ebody, const PolyMesh& fm, int fbody, bool edge_is_a) {
    for (const auto& e : em.edges) {
      for (std::size_t fi = 0; fi < fm.faces.size(); ++fi) {
        const MeshFace& f = fm.faces[fi];
        if (std::abs(f.normal.dot(e.dir)) > std::sin(tol::kAffordAngleDeg * M_PI / 180.0)) continue;
        if (std::abs(f.normal.dot(e.p0) - f.offset) > contact_tol) continue;
        if (std::abs(f.normal.dot(e.p1) - f.offset) > contact_tol) continue;
        // The support normal must point into the edge's wedge.
        if (!dir_in_side_cone(e, f.normal, std::sin(tol::kAffordAngleDeg * M_PI / 180.0))) continue;
        // Skip duplicates of face-face interfaces along this edge.
        if (edge_is_a ? (face_face_matched(e.f1, static_cast<int>(fi)) ||
                         face_face_matched(e.f2, static_cast<int>(fi)))
                      : (face_face_matched(static_cast<int>(fi), e.f1) ||
                         face_face_matched(static_cast<int>(fi), e.f2)))
          continue;

        // Clip the segment to the face polygon.
        Frame2 fr = face_frame(f);
        Vec2 s0 = fr.to2(e.p0), s1 = fr.to2(e.p1);
        double lo = kInf, hi = -kInf;
        for (int ti : f.tris) {
          double t0 = 0.0, t1 = 1.0;
          bool ok = true;
          for (int k = 0; k < 3 && ok; ++k) {
            Vec2 ca = fr.to2(fm.vertices[fm.triangles[ti][k]]);
            Vec2 cb = fr.to2(fm.vertices[fm.triangles[ti][(k + 1) % 3]]);
            Vec2 d = cb - ca;
            auto side = [&](const Vec2& p) { return d.x() * (p.y() - ca.y()) - d.y() * (p.x() - ca.x()); };
            double ssign = poly_area2({ca, cb, fr.to2(fm.vertices[fm.triangles[ti][(k + 2) % 3]])}) >= 0 ? 1.0 : -1.0;
            double sp = ssign * side(s0), sq = ssign * side(s1);
            if (sp < -1e-12 && sq < -1e-12) ok = false;
            else if (sp < 0 || sq < 0) {
              double f01 = sp / (sp - sq);
              if (sp < 0) t0 = std::max(t0, f01);
              else t1 = std::min(t1, f01);
            }
          }
          if (ok && t0 <= t1) {
            lo = std::min(lo, t0);
            hi = std::max(hi, t1);
          }
        }
        if (!(lo <= hi)) continue;
        Vec3 p_lo = e.p0 + lo * (e.p1 - e.p0);
        Vec3 p_hi = e.p0 + hi * (e.p1 - e.p0);
        ContactInterface ci;
        ci.kind = ContactInterface::Kind::FaceEdge;
        ci.mu = mu;
        ci.normal = f.normal;
        ci.supporting = fbody;
        ci.supported = ebody;
        if ((p_hi - p_lo).norm() > 1e-9) ci.corners = {p_lo, p_hi};
        else ci.corners = {0.5 * (p_lo + p_hi)};
        out.push_back(std::move(ci));
      }
    }
  };
  edge_on_face(a, body_a, b, body_b, true);
  edge_on_face(b, body_b, a, body_a, false);

  // Edge-edge point contacts between skew edges.
  for (const auto& ea : a.edges) {
    for (const auto& eb : b.edges) {
      Vec3 cr = ea.dir.cross(eb.dir);
      if (cr.norm() < 1e-6) continue;
      auto ts = closest_points_between_lines(ea.line(), eb.line());
      if (!ts) continue;
      double ta = ts->first, tb = ts->second;
      if (ta < -1e-9 || ta > ea.length + 1e-9 || tb < -1e-9 || tb > eb.length + 1e-9) continue;
      Vec3 pa = ea.line().at(ta), pb = eb.line().at(tb);
      if ((pa - pb).norm() > contact_tol) continue;
      // Strictly inside both wedges; boundary grazes belong to the adjacent
      // face contacts already found.
      double slack = -1e-7;
      Vec3 n = cr.normalized();
      if (dir_in_side_cone(ea, n, slack) && dir_in_side_cone(eb, -n, slack)) {
      } else if (dir_in_side_cone(ea, -n, slack) && dir_in_side_cone(eb, n, slack)) {
        n = -n;
      } else {
        continue;
      }
      Vec3 touch = 0.5 * (pa + pb);
      bool near_existing = false;
      for (const auto& ci : out)
        for (const auto& c : ci.corners)
          if ((c - touch).norm() < 1e-6) near_existing = true;
      if (near_existing) continue;
      ContactInterface ci;
      ci.kind = ContactInterface::Kind::EdgeEdge;
      ci.mu = mu;
      ci.normal = n;  // points into a's material: b supports a
      ci.supporting = body_b;
      ci.supported = body_a;
      ci.corners = {touch};
      out.push_back(std::move(ci));
    }
  }

  return out;
}

std::vector<ContactPoint> interface_contact_points(const std::vector<ContactInterface>& interfaces) {
  std::vector<ContactPoint> out;
  for (const auto& ci : interfaces) {
    for (const auto& corner : ci.corners) {
      bool dup = false;
      for (const auto& existing : out) {
        bool same_pair = (existing.supported == ci.supported && existing.supporting == ci.supporting) ||
                         (existing.supported == ci.supporting && existing.supporting == ci.supported);
        if (same_pair && (existing.position - corner).norm() < 1e-9) dup = true;
      }
      if (!dup) out.push_back(ContactPoint::make(corner, ci.normal, ci.mu, ci.supporting, ci.supported));
    }
  }
  return out;
}

}  // namespace placer
