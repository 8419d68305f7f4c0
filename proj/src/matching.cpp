#include "placer/matching.hpp"

#include <algorithm>
#include <cmath>

namespace placer {

namespace {

constexpr double kAngleTol = tol::kAffordAngleDeg * M_PI / 180.0;

double angle_between(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

// Achievable angles between a fixed unit vector m and directions in the edge's
// side-vector fan (the arc of nonnegative combinations of s1, s2).
std::pair<double, double> fan_angle_range(const FeatureEdge& e, const Vec3& m) {
  Vec3 x = e.s1;
  Vec3 y = e.dir.cross(e.s1);
  double phi2 = std::atan2(e.s2.dot(y), e.s2.dot(x));
  if (phi2 < 0) {
    y = -y;
    phi2 = -phi2;
  }
  Vec3 m_par = m - m.dot(e.dir) * e.dir;
  double rho = m_par.norm();
  if (rho < 1e-12) return {M_PI_2, M_PI_2};
  double phim = std::atan2(m_par.dot(y), m_par.dot(x));

  auto wrapped_in = [&](double phi) {
    double w = phi - 2.0 * M_PI * std::floor(phi / (2.0 * M_PI));
    return w <= phi2;
  };
  double c0 = std::cos(0.0 - phim), c1 = std::cos(phi2 - phim);
  double cmax = std::max(c0, c1);
  double cmin = std::min(c0, c1);
  if (wrapped_in(phim)) cmax = 1.0;
  if (wrapped_in(phim + M_PI)) cmin = -1.0;
  return {std::acos(std::clamp(rho * cmax, -1.0, 1.0)), std::acos(std::clamp(rho * cmin, -1.0, 1.0))};
}

double fan_half_angle(const FeatureEdge& e) { return 0.5 * angle_between(e.s1, e.s2); }

Vec3 fan_bisector(const FeatureEdge& e) { return (e.s1 + e.s2).normalized(); }

}  // namespace

Mat3 relative_scene_rotation(const Vec3& n_a, const Vec3& n_b) { return rotation_between_vectors(n_a, n_b); }

bool face_affords_face(const Vec3& face_normal, const Vec3& required) {
  return face_normal.dot(required) < -std::cos(kAngleTol);
}

bool face_affords_edge(const Vec3& normal, const FeatureEdge& edge) {
  if (std::abs(normal.dot(edge.dir)) > std::sin(kAngleTol)) return false;
  double u = edge.dir.dot(edge.s1.cross(edge.s2));
  double v = edge.dir.dot(normal.cross(edge.s2));
  double w = edge.dir.dot(normal.cross(edge.s1));
  return u * v <= 1e-12 && u * w >= -1e-12;
}

Vec3 feature_normal(const PolyMesh& mesh, const FeatureRef& ref) {
  return ref.is_edge ? mesh.edges[ref.index].pseudo_normal() : mesh.faces[ref.index].normal;
}

std::vector<FeaturePair> enumerate_feature_pairs(const PolyMesh& mesh, const SceneContactSample& a,
                                                 const SceneContactSample& b, double L) {
  (void)L;
  std::vector<FeaturePair> out;
  const double alpha = angle_between(a.normal, b.normal);
  const int nf = static_cast<int>(mesh.faces.size());
  const int ne = static_cast<int>(mesh.edges.size());

  auto face_edge_kind = [&](const FeatureEdge& e, const MeshFace& f) {
    return std::abs(f.normal.dot(e.dir)) > tol::kParallelSin ? PairKind::FaceEdgeIntersecting
                                                             : PairKind::FaceEdgeParallel;
  };

  // Face-face: the placement maps both face normals onto the opposed sampled
  // normals, which pins their mutual angle to alpha.
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nf; ++j) {
      const MeshFace& f1 = mesh.faces[i];
      const MeshFace& f2 = mesh.faces[j];
      double beta = angle_between(f1.normal, f2.normal);
      if (std::abs(beta - alpha) > kAngleTol) continue;
      if (beta <= kAngleTol) {
        if (std::abs(f1.offset - f2.offset) <= 1e-6)
          out.push_back({PairKind::FaceFaceCoplanar, {false, i}, {false, j}});
        // parallel but not coplanar: separation would have to equal the face
        // gap exactly; rejected
      } else if (beta >= M_PI - kAngleTol) {
        // opposed parallel faces: same rejection
      } else {
        out.push_back({PairKind::FaceFaceIntersecting, {false, i}, {false, j}});
      }
    }
  }

  // Face-edge and edge-face: the edge realizes any support direction in its
  // side-vector fan, so the face normal must reach the complement angle.
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < ne; ++j) {
      const MeshFace& f = mesh.faces[i];
      const FeatureEdge& e = mesh.edges[j];
      auto [lo, hi] = fan_angle_range(e, f.normal);
      double need = M_PI - alpha;
      if (need < lo - kAngleTol || need > hi + kAngleTol) continue;
      PairKind kind = face_edge_kind(e, f);
      out.push_back({kind, {false, i}, {true, j}});
      out.push_back({kind, {true, j}, {false, i}});
    }
  }

  // Edge-edge: interval overlap of the two fans (conservative).
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) {
      const FeatureEdge& e1 = mesh.edges[i];
      const FeatureEdge& e2 = mesh.edges[j];
      double base = angle_between(fan_bisector(e1), fan_bisector(e2));
      if (std::abs(base - alpha) > fan_half_angle(e1) + fan_half_angle(e2) + kAngleTol) continue;
      PairKind kind;
      Vec3 cr = e1.dir.cross(e2.dir);
      if (cr.norm() <= tol::kParallelSin) {
        kind = PairKind::EdgeEdgeParallel;
      } else {
        auto ts = closest_points_between_lines(e1.line(), e2.line());
        if (!ts) continue;
        double gap = (e1.line().at(ts->first) - e2.line().at(ts->second)).norm();
        kind = gap <= 1e-9 ? PairKind::EdgeEdgeIntersecting : PairKind::EdgeEdgeSkew;
      }
      out.push_back({kind, {true, i}, {true, j}});
    }
  }
  return out;
}

std::optional<MatchedPoints> match_face_face_coplanar(const PolyMesh& mesh, const Plane& plane,
                                                      const Vec3& com, double L) {
  // Spread direction of the object silhouette on the plane.
  Vec3 ux = any_perpendicular(plane.normal);
  Vec3 uy = plane.normal.cross(ux);
  double sxx = 0, sxy = 0, syy = 0, mx = 0, my = 0;
  for (const auto& v : mesh.vertices) {
    mx += v.dot(ux);
    my += v.dot(uy);
  }
  mx /= static_cast<double>(mesh.vertices.size());
  my /= static_cast<double>(mesh.vertices.size());
  for (const auto& v : mesh.vertices) {
    double x = v.dot(ux) - mx, y = v.dot(uy) - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double theta = 0.5 * std::atan2(2 * sxy, sxx - syy);
  Vec3 u = std::cos(theta) * ux + std::sin(theta) * uy;

  Vec3 o1 = project_point_to_plane(com, plane);
  return MatchedPoints{o1 + 0.5 * L * u, o1 - 0.5 * L * u, false};
}

std::optional<MatchedPoints> match_face_face_intersecting(const Plane& p1, const Plane& p2, const Vec3& com,
                                                          double L) {
  Vec3 cross = p1.normal.cross(p2.normal);
  double s = cross.norm();
  if (s <= tol::kParallelSin) return std::nullopt;
  Vec3 edge_dir = cross / s;

  Vec3 o1 = project_point_to_plane(com, p1);
  Vec3 o2 = project_point_to_plane(com, p2);
  if ((o1 - o2).norm() < 1e-12) return std::nullopt;  // com on the shared edge

  Vec3 u = p1.normal.cross(edge_dir);
  double denom = p2.normal.dot(u);
  if (std::abs(denom) < 1e-14) return std::nullopt;
  Vec3 edge_origin = o1 + (p2.offset - p2.normal.dot(o1)) / denom * u;
  Vec3 o0 = edge_origin + (com - edge_origin).dot(edge_dir) * edge_dir;

  double scale = L / (o1 - o2).norm();
  return MatchedPoints{o0 + scale * (o1 - o0), o0 + scale * (o2 - o0), false};
}

std::optional<MatchedPoints> match_face_edge(const Plane& face, const Line& edge, const Vec3& com, double L,
                                             bool intersecting) {
  Vec3 o1 = project_point_to_plane(com, face);
  Vec3 o2 = project_point_to_line(com, edge);
  if (intersecting) {
    auto hit = line_plane_intersection(edge, face);
    if (!hit) return std::nullopt;
    Vec3 o0 = hit->second;
    if ((o1 - o2).norm() < 1e-12) return std::nullopt;
    double scale = L / (o1 - o2).norm();
    return MatchedPoints{o0 + scale * (o1 - o0), o0 + scale * (o2 - o0), false};
  }
  // Parallel: the edge point is the com projection, the face point completes
  // the right triangle over the plane offset of the edge.
  Vec3 o3 = project_point_to_plane(o2, face);
  double h2 = (o3 - o2).squaredNorm();
  if (L * L < h2) return std::nullopt;  // edge too far from the face plane
  Vec3 dir = o1 - o3;
  double len = dir.norm();
  if (len < 1e-12) return std::nullopt;  // com projects onto the edge foot
  Vec3 q = o3 + std::sqrt(L * L - h2) * dir / len;
  return MatchedPoints{q, o2, false};
}

std::optional<MatchedPoints> match_edge_edge(const Line& e1, const Line& e2, const Vec3& com, double L,
                                             PairKind subcase) {
  Vec3 o1 = project_point_to_line(com, e1);
  Vec3 o2 = project_point_to_line(com, e2);

  if (subcase == PairKind::EdgeEdgeParallel) {
    double h2 = (o1 - o2).squaredNorm();
    if (L * L < h2) return MatchedPoints{o1, o2, true};  // separation unreachable
    double off = 0.5 * std::sqrt(L * L - h2);
    return MatchedPoints{o1 + off * e1.direction, o2 - off * e1.direction, false};
  }

  auto ts = closest_points_between_lines(e1, e2);
  if (!ts) return std::nullopt;
  Vec3 p1 = e1.at(ts->first);
  Vec3 p2 = e2.at(ts->second);

  if (subcase == PairKind::EdgeEdgeIntersecting) {
    Vec3 o0 = p1;
    if ((o1 - o2).norm() < 1e-12) return std::nullopt;
    double scale = L / (o1 - o2).norm();
    return MatchedPoints{o0 + scale * (o1 - o0), o0 + scale * (o2 - o0), false};
  }

  double g2 = (p1 - p2).squaredNorm();
  if (L * L < g2) return std::nullopt;  // edges too far apart
  double planar2 = (o1 - o2).squaredNorm() - g2;
  if (planar2 < 1e-24) return std::nullopt;  // com projections sit at the closest points
  double beta = std::sqrt((L * L - g2) / planar2);
  return MatchedPoints{p1 + beta * (o1 - p1), p2 + beta * (o2 - p2), false};
}

std::optional<MatchedPoints> match_feature_pair(const PolyMesh& mesh, const Vec3& com,
                                                const FeaturePair& pair, double L) {
  auto face_plane = [&](const FeatureRef& ref) { return mesh.faces[ref.index].plane(); };
  auto edge_line = [&](const FeatureRef& ref) { return mesh.edges[ref.index].line(); };

  switch (pair.kind) {
    case PairKind::FaceFaceCoplanar:
      return match_face_face_coplanar(mesh, face_plane(pair.f1), com, L);
    case PairKind::FaceFaceIntersecting:
      return match_face_face_intersecting(face_plane(pair.f1), face_plane(pair.f2), com, L);
    case PairKind::FaceEdgeIntersecting:
    case PairKind::FaceEdgeParallel: {
      bool intersecting = pair.kind == PairKind::FaceEdgeIntersecting;
      if (pair.f1.is_edge) {
        // Sample a sits on the edge: swap the construction's roles back.
        auto m = match_face_edge(face_plane(pair.f2), edge_line(pair.f1), com, L, intersecting);
        if (!m) return std::nullopt;
        return MatchedPoints{m->r, m->q, m->clamped};
      }
      return match_face_edge(face_plane(pair.f1), edge_line(pair.f2), com, L, intersecting);
    }
    case PairKind::EdgeEdgeParallel:
    case PairKind::EdgeEdgeIntersecting:
    case PairKind::EdgeEdgeSkew:
      return match_edge_edge(edge_line(pair.f1), edge_line(pair.f2), com, L, pair.kind);
  }
  return std::nullopt;
}

}  // namespace placer
