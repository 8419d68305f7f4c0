#include <doctest.h>

#include <cmath>

#include "placer/matching.hpp"

#include "test_helpers.hpp"

using namespace placer;

namespace {

const FeatureEdge* find_edge(const PolyMesh& mesh, const Vec3& n1, const Vec3& n2) {
  for (const auto& e : mesh.edges) {
    if ((e.n1 - n1).norm() < 1e-9 && (e.n2 - n2).norm() < 1e-9) return &e;
    if ((e.n1 - n2).norm() < 1e-9 && (e.n2 - n1).norm() < 1e-9) return &e;
  }
  return nullptr;
}

SceneContactSample sample_at(const Vec3& p, const Vec3& n) {
  SceneContactSample s;
  s.position = p;
  s.normal = n;
  return s;
}

}  // namespace

TEST_CASE("face_affords_face thresholds") {
  Vec3 n(0, 0, 1);
  CHECK(face_affords_face(n, {0, 0, -1}));
  Mat3 r5(Eigen::AngleAxisd(5.0 * M_PI / 180.0, Vec3::UnitX()));
  CHECK_FALSE(face_affords_face(n, r5 * Vec3(0, 0, -1)));
  Mat3 r05(Eigen::AngleAxisd(0.5 * M_PI / 180.0, Vec3::UnitX()));
  CHECK(face_affords_face(n, r05 * Vec3(0, 0, -1)));
}

TEST_CASE("face_affords_edge on a cube edge") {
  PolyMesh cube = make_box({1, 1, 1});
  REQUIRE(cube.edges.size() == 12);
  const FeatureEdge& e = cube.edges[0];

  // Opposed outward bisector lies between the side vectors.
  Vec3 outward = -(e.s1 + e.s2).normalized();
  CHECK(face_affords_edge(outward, e));
  // Boundary: aligned with an adjacent face normal (inclusive).
  CHECK(face_affords_edge(e.n1, e));
  CHECK(face_affords_edge(e.n2, e));
  // Inward bisector fails.
  CHECK_FALSE(face_affords_edge((e.s1 + e.s2).normalized(), e));
  // A component along the edge direction fails orthogonality.
  CHECK_FALSE(face_affords_edge((outward + 0.5 * e.dir).normalized(), e));
}

TEST_CASE("relative_scene_rotation special cases") {
  CHECK((relative_scene_rotation(Vec3::UnitZ(), Vec3::UnitZ()) - Mat3::Identity()).norm() < 1e-12);
  Mat3 r = relative_scene_rotation(Vec3::UnitZ(), -Vec3::UnitZ());
  CHECK((r * Vec3::UnitZ() + Vec3::UnitZ()).norm() < 1e-9);
  Mat3 p = relative_scene_rotation(Vec3::UnitX(), Vec3::UnitY());
  CHECK((p * Vec3::UnitX() - Vec3::UnitY()).norm() < 1e-12);
}

TEST_CASE("enumerate: cube over coplanar floor samples") {
  PolyMesh cube = make_box({0.3, 0.3, 0.3});
  auto a = sample_at({0.0, 0.0, 0.0}, Vec3::UnitZ());
  auto b = sample_at({0.2, 0.0, 0.0}, Vec3::UnitZ());
  auto pairs = enumerate_feature_pairs(cube, a, b, 0.2);
  int coplanar = 0;
  for (const auto& p : pairs) {
    if (p.kind == PairKind::FaceFaceCoplanar) {
      ++coplanar;
      CHECK(p.f1.index == p.f2.index);  // the cube has no distinct coplanar faces
    }
    CHECK(p.kind != PairKind::FaceFaceIntersecting);  // alpha = 0 admits no intersecting faces
  }
  CHECK(coplanar == 6);
}

TEST_CASE("enumerate: cube into a right-angle corner") {
  PolyMesh cube = make_box({0.3, 0.3, 0.3});
  auto a = sample_at({0.0, 0.0, 0.0}, Vec3::UnitZ());
  auto b = sample_at({0.3, 0.2, 0.2}, Vec3::UnitX());
  auto pairs = enumerate_feature_pairs(cube, a, b, (a.position - b.position).norm());
  int intersecting = 0;
  for (const auto& p : pairs) {
    if (p.kind != PairKind::FaceFaceIntersecting) continue;
    ++intersecting;
    double d = cube.faces[p.f1.index].normal.dot(cube.faces[p.f2.index].normal);
    CHECK(std::abs(d) < 1e-9);  // only perpendicular pairs qualify
  }
  CHECK(intersecting == 24);
}

TEST_CASE("enumerate: tessellated sphere over coplanar samples") {
  PolyMesh ball = make_uv_sphere(0.15, 60);
  auto a = sample_at({0.0, 0.0, 0.0}, Vec3::UnitZ());
  auto b = sample_at({0.1, 0.0, 0.0}, Vec3::UnitZ());
  auto pairs = enumerate_feature_pairs(ball, a, b, 0.1);
  CHECK(!pairs.empty());
}

TEST_CASE("match_face_face_coplanar centers on the com projection") {
  PolyMesh cube = make_box({1, 1, 1});
  Plane bottom{{0, 0, -1}, 0.5};
  Vec3 com(0.1, -0.2, 0.05);
  auto m = match_face_face_coplanar(cube, bottom, com, 0.4);
  REQUIRE(m.has_value());
  CHECK((m->q - m->r).norm() == doctest::Approx(0.4).epsilon(1e-12));
  Vec3 mid = 0.5 * (m->q + m->r);
  CHECK((mid - project_point_to_plane(com, bottom)).norm() < 1e-9);
  CHECK(std::abs(bottom.signed_distance(m->q)) < 1e-9);
  CHECK(std::abs(bottom.signed_distance(m->r)) < 1e-9);
}

TEST_CASE("match_face_face_intersecting: perpendicular planes") {
  Plane p1{{0, 0, 1}, 0.0};
  Plane p2{{1, 0, 0}, 0.0};
  Vec3 com(0.5, 0.0, 0.5);
  double L = std::sqrt(2.0) * 0.3;
  auto m = match_face_face_intersecting(p1, p2, com, L);
  REQUIRE(m.has_value());
  CHECK((m->q - m->r).norm() == doctest::Approx(L).epsilon(1e-9));
  CHECK(std::abs(p1.signed_distance(m->q)) < 1e-9);
  CHECK(std::abs(p2.signed_distance(m->r)) < 1e-9);
  // Equidistant com: isoceles triangle legs.
  Vec3 o0(0, com.y(), 0);
  CHECK(std::abs((m->q - o0).norm() - (m->r - o0).norm()) < 1e-9);
  // Both points in the plane through the com orthogonal to the shared edge.
  Vec3 edge_dir = Vec3::UnitY();
  CHECK(std::abs((m->q - com).dot(edge_dir)) < 1e-9);
  CHECK(std::abs((m->r - com).dot(edge_dir)) < 1e-9);

  // Degenerate: com on the intersection line.
  CHECK_FALSE(match_face_face_intersecting(p1, p2, {0, 0.3, 0}, L).has_value());
}

TEST_CASE("match_face_edge parallel cases") {
  Plane face{{0, 0, 1}, 0.0};
  SUBCASE("edge at height equal to separation") {
    Line edge{{0.4, 0, 0.25}, {0, 1, 0}};
    Vec3 com(0.1, 0.2, 0.3);
    auto m = match_face_edge(face, edge, com, 0.25, false);
    REQUIRE(m.has_value());
    CHECK((m->q - m->r).norm() == doctest::Approx(0.25).epsilon(1e-9));
    // Offset along the face is zero: q is the edge's foot point.
    CHECK((m->q - Vec3(0.4, 0.2, 0.0)).norm() < 1e-9);
    CHECK((m->r - project_point_to_line(com, edge)).norm() < 1e-12);
  }
  SUBCASE("edge inside the face plane") {
    Line edge{{0.4, 0, 0.0}, {0, 1, 0}};
    Vec3 com(0.1, 0.2, 0.3);
    auto m = match_face_edge(face, edge, com, 0.2, false);
    REQUIRE(m.has_value());
    CHECK((m->q - m->r).norm() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(std::abs(face.signed_distance(m->q)) < 1e-12);
    // q walks from the edge toward the com projection.
    CHECK(m->q.x() < 0.4);
  }
  SUBCASE("too far apart") {
    Line edge{{0.4, 0, 0.5}, {0, 1, 0}};
    CHECK_FALSE(match_face_edge(face, edge, {0, 0, 0.2}, 0.3, false).has_value());
  }
  SUBCASE("intersecting edge uses the triangle construction") {
    Line edge{{0.2, 0, 0.4}, Vec3(1, 0, -1).normalized()};
    Vec3 com(-0.2, 0.1, 0.35);
    auto m = match_face_edge(face, edge, com, 0.3, true);
    REQUIRE(m.has_value());
    CHECK((m->q - m->r).norm() == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::abs(face.signed_distance(m->q)) < 1e-9);
    CHECK((project_point_to_line(m->r, edge) - m->r).norm() < 1e-9);
  }
}

TEST_CASE("match_edge_edge cases") {
  SUBCASE("parallel edges from the Pythagorean ladder") {
    Line e1{{0, 0, 0}, {1, 0, 0}};
    Line e2{{0, 0.6, 0}, {1, 0, 0}};
    Vec3 com(0.3, 0.3, 0.2);
    auto m = match_edge_edge(e1, e2, com, 1.0, PairKind::EdgeEdgeParallel);
    REQUIRE(m.has_value());
    CHECK_FALSE(m->clamped);
    CHECK((m->q - m->r).norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs((m->q - project_point_to_line(com, e1)).norm() - 0.4) < 1e-9);
    CHECK(std::abs((m->r - project_point_to_line(com, e2)).norm() - 0.4) < 1e-9);
  }
  SUBCASE("parallel edges clamp when the separation is unreachable") {
    Line e1{{0, 0, 0}, {1, 0, 0}};
    Line e2{{0, 0.6, 0}, {1, 0, 0}};
    Vec3 com(0.3, 0.3, 0.2);
    auto m = match_edge_edge(e1, e2, com, 0.5, PairKind::EdgeEdgeParallel);
    REQUIRE(m.has_value());
    CHECK(m->clamped);
    CHECK((m->q - project_point_to_line(com, e1)).norm() < 1e-12);
    CHECK((m->r - project_point_to_line(com, e2)).norm() < 1e-12);
  }
  SUBCASE("skew orthogonal edges with gap equal to separation") {
    Line e1{{0, 0, 0}, {1, 0, 0}};
    Line e2{{0, 0, 0.6}, {0, 1, 0}};
    Vec3 com(0.4, -0.3, 0.3);
    auto m = match_edge_edge(e1, e2, com, 0.6, PairKind::EdgeEdgeSkew);
    REQUIRE(m.has_value());
    CHECK((m->q - Vec3(0, 0, 0)).norm() < 1e-9);
    CHECK((m->r - Vec3(0, 0, 0.6)).norm() < 1e-9);
  }
  SUBCASE("skew edges too far apart") {
    Line e1{{0, 0, 0}, {1, 0, 0}};
    Line e2{{0, 0, 0.8}, {0, 1, 0}};
    CHECK_FALSE(match_edge_edge(e1, e2, {0, 0, 0.4}, 0.5, PairKind::EdgeEdgeSkew).has_value());
  }
  SUBCASE("intersecting edges") {
    Line e1{{-0.5, 0, 0}, {1, 0, 0}};
    Line e2{{0, -0.5, 0}, {0, 1, 0}};
    Vec3 com(0.25, 0.3, 0.1);
    auto m = match_edge_edge(e1, e2, com, 0.4, PairKind::EdgeEdgeIntersecting);
    REQUIRE(m.has_value());
    CHECK((m->q - m->r).norm() == doctest::Approx(0.4).epsilon(1e-9));
    CHECK((project_point_to_line(m->q, e1) - m->q).norm() < 1e-9);
    CHECK((project_point_to_line(m->r, e2) - m->r).norm() < 1e-9);
  }
}

TEST_CASE("randomized separation and support membership across subcases") {
  Rng rng(202);
  int per_case[7] = {0, 0, 0, 0, 0, 0, 0};
  PolyMesh cube = make_box({0.4, 0.4, 0.4});
  for (int trial = 0; trial < 2000; ++trial) {
    double L = rng.uniform(0.1, 1.0);
    Vec3 com = random_vec(rng, 0.5);
    int kind = static_cast<int>(rng.uniform01() * 7) % 7;
    std::optional<MatchedPoints> m;
    Plane p1{random_unit(rng), rng.uniform(-0.5, 0.5)};
    Plane p2{random_unit(rng), rng.uniform(-0.5, 0.5)};
    Line l1{random_vec(rng, 0.5), random_unit(rng)};
    Line l2{random_vec(rng, 0.5), random_unit(rng)};
    switch (kind) {
      case 0:
        m = match_face_face_coplanar(cube, p1, com, L);
        if (m) {
          CHECK(std::abs(p1.signed_distance(m->q)) < 1e-9);
          CHECK(std::abs(p1.signed_distance(m->r)) < 1e-9);
        }
        break;
      case 1:
        if (p1.normal.cross(p2.normal).norm() < 0.1) continue;
        m = match_face_face_intersecting(p1, p2, com, L);
        if (m) {
          CHECK(std::abs(p1.signed_distance(m->q)) < 1e-9);
          CHECK(std::abs(p2.signed_distance(m->r)) < 1e-9);
        }
        break;
      case 2:
        if (std::abs(p1.normal.dot(l1.direction)) < 0.1) continue;
        m = match_face_edge(p1, l1, com, L, true);
        if (m) {
          CHECK(std::abs(p1.signed_distance(m->q)) < 1e-9);
          CHECK((project_point_to_line(m->r, l1) - m->r).norm() < 1e-9);
        }
        break;
      case 3: {
        Vec3 dir = p1.normal.cross(random_unit(rng));
        if (dir.norm() < 0.1) continue;
        Line edge{random_vec(rng, 0.5), dir.normalized()};
        double h = std::abs(p1.signed_distance(edge.origin));
        if (h > 0.9 * L) continue;
        m = match_face_edge(p1, edge, com, L, false);
        if (m) {
          CHECK(std::abs(p1.signed_distance(m->q)) < 1e-9);
          CHECK((project_point_to_line(m->r, edge) - m->r).norm() < 1e-9);
        }
        break;
      }
      case 4: {
        Line par{random_vec(rng, 0.5), l1.direction};
        if ((project_point_to_line(com, l1) - project_point_to_line(com, par)).norm() > 0.9 * L) continue;
        m = match_edge_edge(l1, par, com, L, PairKind::EdgeEdgeParallel);
        if (m && !m->clamped) {
          CHECK((project_point_to_line(m->q, l1) - m->q).norm() < 1e-9);
          CHECK((project_point_to_line(m->r, par) - m->r).norm() < 1e-9);
        }
        break;
      }
      case 5: {
        Vec3 x = random_vec(rng, 0.5);
        Line a{x - 0.7 * l1.direction, l1.direction};
        Vec3 d2 = random_unit(rng);
        if (d2.cross(l1.direction).norm() < 0.1) continue;
        Line b{x - 0.3 * d2, d2};
        m = match_edge_edge(a, b, com, L, PairKind::EdgeEdgeIntersecting);
        if (m) {
          CHECK((project_point_to_line(m->q, a) - m->q).norm() < 1e-9);
          CHECK((project_point_to_line(m->r, b) - m->r).norm() < 1e-9);
        }
        break;
      }
      case 6: {
        if (l1.direction.cross(l2.direction).norm() < 0.1) continue;
        auto ts = closest_points_between_lines(l1, l2);
        if (!ts) continue;
        double gap = (l1.at(ts->first) - l2.at(ts->second)).norm();
        if (gap > 0.9 * L || gap < 1e-4) continue;
        m = match_edge_edge(l1, l2, com, L, PairKind::EdgeEdgeSkew);
        if (m) {
          CHECK((project_point_to_line(m->q, l1) - m->q).norm() < 1e-9);
          CHECK((project_point_to_line(m->r, l2) - m->r).norm() < 1e-9);
        }
        break;
      }
    }
    if (m && !m->clamped) {
      ++per_case[kind];
      CHECK((m->q - m->r).norm() == doctest::Approx(L).epsilon(1e-9));
    }
  }
  for (int k = 0; k < 7; ++k) CHECK(per_case[k] > 50);
}
