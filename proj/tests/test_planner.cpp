#include <doctest.h>

#include "placer/planner.hpp"

#include "test_helpers.hpp"

using namespace placer;

namespace {

Assembly floor_scene() {
  Assembly assembly;
  PolyObject floor;
  floor.name = "floor";
  floor.mesh = make_box({2.0, 2.0, 0.1});
  floor.mass = 1.0;
  assembly.add(std::move(floor), Pose{Mat3::Identity(), {0, 0, -0.05}}, true);
  return assembly;
}

Assembly cube_scene() {
  Assembly assembly = floor_scene();
  PolyObject cube;
  cube.name = "base";
  cube.mesh = make_box({0.3, 0.3, 0.3});
  cube.mass = 1.0;
  assembly.add(std::move(cube), Pose{Mat3::Identity(), {0, 0, 0.15}}, false);
  return assembly;
}

PolyObject payload(double side = 0.25) {
  PolyObject cube;
  cube.name = "payload";
  cube.mesh = make_box({side, side, side});
  cube.mass = 0.8;
  return cube;
}

}  // namespace

TEST_CASE("plan onto a cube scene succeeds quickly and is deterministic") {
  PlannerConfig config;
  config.seed = 42;
  config.max_iterations = 200;

  Assembly a1 = cube_scene();
  auto r1 = plan_placement(a1, payload(), config);
  REQUIRE(r1.success);
  CHECK(r1.iterations <= 50);
  CHECK(r1.min_sr_after >= 0.0);
  CHECK(r1.volume_after > 0.0);

  Assembly a2 = cube_scene();
  auto r2 = plan_placement(a2, payload(), config);
  REQUIRE(r2.success);
  CHECK(r2.iterations == r1.iterations);
  CHECK((r2.pose.t - r1.pose.t).norm() == 0.0);
  CHECK((r2.pose.R - r1.pose.R).norm() == 0.0);
}

TEST_CASE("accepted pose re-validates from scratch") {
  PlannerConfig config;
  config.seed = 7;
  Assembly before = cube_scene();
  Assembly assembly = cube_scene();
  auto report = plan_placement(assembly, payload(), config);
  REQUIRE(report.success);
  auto audit = validate_pose(report.pose, payload(), before, config.validation);
  CHECK(audit.accepted);
}

TEST_CASE("planning onto a bare fixed floor requires fixed-support sampling") {
  PlannerConfig config;
  config.seed = 5;
  config.max_iterations = 100;

  Assembly no_fixed = floor_scene();
  auto fail = plan_placement(no_fixed, payload(), config);
  CHECK_FALSE(fail.success);
  CHECK(fail.stages.no_candidates > 0);

  config.allow_fixed_support = true;
  Assembly with_fixed = floor_scene();
  auto ok = plan_placement(with_fixed, payload(), config);
  REQUIRE(ok.success);
  // Lands on the floor plane.
  CHECK(with_fixed.object(with_fixed.size() - 1).world.bounds.min.z() == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("uniform variant reaches a placement as well") {
  PlannerConfig config;
  config.seed = 11;
  config.variant = Variant::Uniform;
  Assembly assembly = cube_scene();
  auto report = plan_placement(assembly, payload(), config);
  CHECK(report.success);
}

TEST_CASE("chance variant nearly never lands a valid pose") {
  PlannerConfig config;
  config.seed = 13;
  config.variant = Variant::Chance;
  config.max_iterations = 60;
  Assembly assembly = cube_scene();
  auto report = plan_placement(assembly, payload(), config);
  CHECK_FALSE(report.success);
  CHECK(report.iterations == 60);
}

TEST_CASE("sampler saturation decays across iterations") {
  SamplerState st;
  st.q0 = 3.0;
  st.lambda = 0.9;
  double prev = kInf;
  for (int k = 0; k < 5; ++k) {
    st.k = k;
    CHECK(st.q() < prev);
    prev = st.q();
  }
}

TEST_CASE("plan_sequence places both cubes and records outcomes") {
  PlannerConfig config;
  config.seed = 21;
  Assembly assembly = cube_scene();
  std::vector<PolyObject> objs = {payload(0.2), payload(0.2)};
  objs[0].name = "first";
  objs[1].name = "second";
  auto reports = plan_sequence(assembly, objs, config, false);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].success);
  CHECK(reports[1].success);
  CHECK(assembly.size() == 4);
}

TEST_CASE("mass-weighted ordering matches the mass distribution") {
  // Two objects, masses 3 and 1: the heavy one leads ~75% of the time.
  int heavy_first = 0;
  const int runs = 1000;
  for (int s = 0; s < runs; ++s) {
    PlannerConfig config;
    config.seed = static_cast<std::uint64_t>(s);
    config.max_iterations = 1;  // ordering only; placements may fail
    Assembly assembly = floor_scene();
    std::vector<PolyObject> objs = {payload(0.2), payload(0.2)};
    objs[0].name = "heavy";
    objs[0].mass = 3.0;
    objs[1].name = "light";
    objs[1].mass = 1.0;
    auto reports = plan_sequence(assembly, objs, config, true);
    REQUIRE(reports.size() == 2);
    if (reports[0].object_name == "heavy") ++heavy_first;
  }
  double expect = 0.75 * runs;
  double sigma = std::sqrt(runs * 0.75 * 0.25);
  CHECK(std::abs(heavy_first - expect) < 3.5 * sigma);
}
