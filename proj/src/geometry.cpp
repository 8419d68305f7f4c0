#include "placer/geometry.hpp"

#include <cmath>

namespace placer {

Vec3 project_point_to_plane(const Vec3& p, const Plane& plane) {
  const Vec3& n = plane.normal;
  return plane.offset * n + p - (p.dot(n)) * n;
}

Vec3 project_point_to_line(const Vec3& p, const Line& line) {
  return line.origin + ((p - line.origin).dot(line.direction)) * line.direction;
}

std::optional<Line> plane_plane_intersection(const Plane& p1, const Plane& p2) {
  Vec3 dir = p1.normal.cross(p2.normal);
  double s = dir.norm();
  if (s <= tol::kParallelSin) return std::nullopt;
  dir /= s;
  // Walk from a point of plane 1 along u (in plane 1) until plane 2 is hit.
  Vec3 u = p1.normal.cross(dir);
  Vec3 base = p1.offset * p1.normal;
  double denom = p2.normal.dot(u);
  Vec3 origin = base + (p2.offset - p2.normal.dot(base)) / denom * u;
  return Line{origin, dir};
}

std::optional<std::pair<double, Vec3>> line_plane_intersection(const Line& line, const Plane& plane) {
  double denom = plane.normal.dot(line.direction);
  if (std::abs(denom) <= tol::kParallelSin) return std::nullopt;
  double t = (plane.offset - plane.normal.dot(line.origin)) / denom;
  return std::make_pair(t, line.at(t));
}

std::optional<std::pair<double, double>> closest_points_between_lines(const Line& e1, const Line& e2) {
  const Vec3& u1 = e1.direction;
  const Vec3& u2 = e2.direction;
  if (u1.cross(u2).norm() <= tol::kParallelSin) return std::nullopt;
  Vec3 w = e1.origin - e2.origin;
  double d = u1.dot(u2);
  double denom = 1.0 - d * d;
  double t1 = (d * u2.dot(w) - u1.dot(w)) / denom;
  double t2 = (u2.dot(w) - d * u1.dot(w)) / denom;
  return std::make_pair(t1, t2);
}

Vec3 any_perpendicular(const Vec3& n) {
  Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return n.cross(ref).normalized();
}

Mat3 rotation_between_vectors(const Vec3& a, const Vec3& b) {
  double c = std::clamp(a.dot(b), -1.0, 1.0);
  Vec3 axis = a.cross(b);
  double s = axis.norm();
  if (s <= tol::kParallelSin) {
    if (c > 0.0) return Mat3::Identity();
    // Antipodal: half turn about any axis perpendicular to a.
    Vec3 k = any_perpendicular(a);
    return Mat3(Eigen::AngleAxisd(M_PI, k));
  }
  axis /= s;
  Mat3 K = skew(axis);
  return Mat3::Identity() + s * K + (1.0 - c) * K * K;
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
  Vec3 ref = Vec3::UnitX();
  Vec3 u = ref - ref.dot(n) * n;
  if (u.norm() < 1e-6) {
    ref = Vec3::UnitY();
    u = ref - ref.dot(n) * n;
  }
  u.normalize();
  return {u, n.cross(u)};
}

}  // namespace placer
