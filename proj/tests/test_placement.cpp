#include <doctest.h>

#include "placer/placement.hpp"

#include "test_helpers.hpp"

using namespace placer;

namespace {

Assembly table_assembly() {
  Assembly assembly;
  PolyObject table;
  table.name = "table";
  table.mesh = make_box({1.0, 1.0, 0.4});
  table.mass = 4.0;
  assembly.add(std::move(table), Pose{Mat3::Identity(), {0, 0, 0.2}}, true);
  return assembly;
}

PolyObject small_cube(double side = 0.3, double mass = 1.0) {
  PolyObject cube;
  cube.name = "cube";
  cube.mesh = make_box({side, side, side});
  cube.mass = mass;
  cube.com = Vec3::Zero();
  return cube;
}

}  // namespace

TEST_CASE("determine_pose identity setup") {
  Vec3 a(0, 0.2, 0), b(0, 0, 0);
  Vec3 q(0, 0.1, -0.15), r(0, -0.1, -0.15);
  auto pose = determine_pose(a, b, Vec3::UnitZ(), q, r, -Vec3::UnitZ());
  REQUIRE(pose.has_value());
  CHECK((pose->R - Mat3::Identity()).norm() < 1e-9);
  CHECK((pose->t - (a - q)).norm() < 1e-9);
}

TEST_CASE("determine_pose contact coincidence and direction mapping") {
  Rng rng(303);
  for (int trial = 0; trial < 1000; ++trial) {
    double L = rng.uniform(0.05, 1.0);
    Vec3 a = random_vec(rng, 1.0);
    Vec3 dir_ab = random_unit(rng);
    Vec3 b = a - L * dir_ab;
    Vec3 n_a = random_unit(rng);
    if (dir_ab.cross(n_a).norm() < 1e-3) continue;

    Vec3 q = random_vec(rng, 0.5);
    Vec3 dir_qr = random_unit(rng);
    Vec3 r = q - L * dir_qr;
    Vec3 n_obj = random_unit(rng);
    if (dir_qr.cross(n_obj).norm() < 1e-3) continue;

    auto pose = determine_pose(a, b, n_a, q, r, n_obj);
    REQUIRE(pose.has_value());
    CHECK((pose->R * pose->R.transpose() - Mat3::Identity()).norm() < 1e-9);
    CHECK(std::abs(pose->R.determinant() - 1.0) < 1e-9);
    CHECK((pose->apply(q) - a).norm() < 1e-9);
    // q - r maps onto a - b (same length by construction).
    CHECK((pose->rotate(q - r) - (a - b)).norm() < 1e-9);
    // The second point coincides as well when the separations agree.
    CHECK((pose->apply(r) - b).norm() < 1e-9);
  }
}

TEST_CASE("determine_pose rejects collinear input") {
  Vec3 a(0, 0, 0), b(0, 0, -0.2);
  CHECK_FALSE(determine_pose(a, b, Vec3::UnitZ(), {0, 0, 0}, {0, 0.2, 0}, -Vec3::UnitZ()).has_value());
  CHECK_FALSE(determine_pose({0.2, 0, 0}, {0, 0, 0}, Vec3::UnitZ(), {0, 0, 0}, {0.2, 0, 0},
                             Vec3::UnitX())
                  .has_value());
}

TEST_CASE("pose from matched bottom face lands flush on the support") {
  Assembly assembly = table_assembly();
  PolyObject cube = small_cube();

  SceneContactSample a, b;
  a.position = Vec3(0.1, 0.0, 0.4);
  a.normal = Vec3::UnitZ();
  b.position = Vec3(-0.1, 0.05, 0.4);
  b.normal = Vec3::UnitZ();
  double L = (a.position - b.position).norm();

  auto pairs = enumerate_feature_pairs(cube.mesh, a, b, L);
  bool validated = false;
  for (const auto& pair : pairs) {
    if (pair.kind != PairKind::FaceFaceCoplanar) continue;
    auto m = match_feature_pair(cube.mesh, cube.com, pair, L);
    REQUIRE(m.has_value());
    auto pose = determine_pose(a.position, b.position, a.normal, m->q, m->r,
                               feature_normal(cube.mesh, pair.f1));
    REQUIRE(pose.has_value());
    CHECK((pose->apply(m->q) - a.position).norm() < 1e-9);
    auto result = validate_pose(*pose, cube, assembly, ValidationConfig{});
    if (!result.accepted) continue;
    validated = true;
    REQUIRE(result.interfaces.size() == 1);
    CHECK(result.interfaces[0].kind == ContactInterface::Kind::FaceFace);
    // Posing the matched face onto the tabletop plane: residual is zero.
    PolyMesh posed = cube.mesh.transformed(*pose);
    CHECK(posed.bounds.min.z() == doctest::Approx(0.4).epsilon(1e-9));
    double mg = cube.mass * 9.81;
    double total_normal = 0.0;
    for (std::size_t i = 0; i < result.forces.force_world.size(); ++i)
      total_normal += result.forces.force_world[i].z();
    CHECK(total_normal == doctest::Approx(mg).epsilon(1e-6));
    CHECK(result.forces.max_tension < 1e-9);
  }
  CHECK(validated);
}

TEST_CASE("validate_pose rejection stages") {
  Assembly assembly = table_assembly();
  PolyObject cube = small_cube();

  SUBCASE("penetrating pose") {
    auto result = validate_pose(Pose{Mat3::Identity(), {0, 0, 0.3}}, cube, assembly, ValidationConfig{});
    CHECK_FALSE(result.accepted);
    CHECK(result.reason == RejectReason::Penetration);
  }
  SUBCASE("floating pose") {
    auto result = validate_pose(Pose{Mat3::Identity(), {0, 0, 1.5}}, cube, assembly, ValidationConfig{});
    CHECK_FALSE(result.accepted);
    CHECK(result.reason == RejectReason::NoContact);
  }
  SUBCASE("com past the support edge") {
    // Bottom face flush with the tabletop but hanging out beyond the edge.
    auto result = validate_pose(Pose{Mat3::Identity(), {0.62, 0, 0.55}}, cube, assembly,
                                ValidationConfig{});
    CHECK_FALSE(result.accepted);
    CHECK((result.reason == RejectReason::TensionScreen || result.reason == RejectReason::QPInfeasible));
  }
  SUBCASE("accepted pose sits flush") {
    auto result = validate_pose(Pose{Mat3::Identity(), {0, 0, 0.55}}, cube, assembly, ValidationConfig{});
    CHECK(result.accepted);
    CHECK(result.forces.residual < 1e-6);
  }
}
