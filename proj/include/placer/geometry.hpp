#pragma once

#include <optional>

#include "placer/core.hpp"

namespace placer {

// Plane in Hessian form: normal.dot(p) == offset for points p on the plane.
struct Plane {
  Vec3 normal{0, 0, 1};
  double offset = 0.0;

  static Plane through(const Vec3& normal, const Vec3& point) {
    Vec3 n = normal.normalized();
    return Plane{n, n.dot(point)};
  }
  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

struct Line {
  Vec3 origin{0, 0, 0};
  Vec3 direction{1, 0, 0};  // unit

  Vec3 at(double t) const { return origin + t * direction; }
};

// Rigid transform, rotation then translation.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return R * p + t; }
  Vec3 rotate(const Vec3& v) const { return R * v; }
  Pose compose(const Pose& other) const { return Pose{R * other.R, R * other.t + t}; }
  Pose inverse() const { return Pose{R.transpose(), -(R.transpose() * t)}; }

  static Pose identity() { return Pose{}; }
  static Pose from_quat(const Quat& q, const Vec3& t) { return Pose{q.normalized().toRotationMatrix(), t}; }
};

Vec3 project_point_to_plane(const Vec3& p, const Plane& plane);
Vec3 project_point_to_line(const Vec3& p, const Line& line);

// Line on both planes; empty when the normals are parallel.
std::optional<Line> plane_plane_intersection(const Plane& p1, const Plane& p2);

// Parameter t and point where the line crosses the plane; empty when parallel.
std::optional<std::pair<double, Vec3>> line_plane_intersection(const Line& line, const Plane& plane);

// Parameters (t1, t2) of the closest points of two non-parallel lines.
std::optional<std::pair<double, double>> closest_points_between_lines(const Line& e1, const Line& e2);

// Rotation taking unit vector a onto unit vector b. For a == -b the axis is
// ill-defined; the convention is a half-turn about an arbitrary axis
// perpendicular to a.
Mat3 rotation_between_vectors(const Vec3& a, const Vec3& b);

// Any unit vector perpendicular to n (unit).
Vec3 any_perpendicular(const Vec3& n);

// Tangent frame (u, v) completing a right-handed orthonormal basis with the
// unit normal n: u is the normalized projection of world x (or y when
// degenerate) onto the plane, v = n x u.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n);

}  // namespace placer
