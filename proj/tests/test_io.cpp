#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "placer/bench.hpp"
#include "placer/scene.hpp"
#include "placer/srmap_io.hpp"

#include "test_helpers.hpp"

using namespace placer;

TEST_CASE("scene generators are deterministic and round-trip byte-identical") {
  for (const std::string name : {"cube", "stack", "pyramids", "table", "sawteeth", "canyon", "bowl"}) {
    SceneJson a = generate_scene(name);
    SceneJson b = generate_scene(name);
    CHECK(a.dump() == b.dump());

    std::string p1 = "roundtrip_1.json", p2 = "roundtrip_2.json";
    save_scene(a, p1);
    std::ifstream f1(p1);
    std::stringstream s1;
    s1 << f1.rdbuf();
    SceneJson loaded = SceneJson::parse(s1.str());
    save_scene(loaded, p2);
    std::ifstream f2(p2);
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    Scene scene = scene_from_json(a);
    CHECK(scene.assembly.size() >= 1);
  }
  CHECK_THROWS(generate_scene("nonesuch"));
}

TEST_CASE("scene schema validation") {
  SceneJson bad = generate_scene("cube");
  bad["objects"][1]["pose"]["quaternion"] = {2.0, 0.0, 0.0, 0.0};
  CHECK_THROWS(scene_from_json(bad));

  SceneJson nomass = generate_scene("cube");
  nomass["objects"][1]["mass"] = 0.0;
  CHECK_THROWS(scene_from_json(nomass));

  SceneJson box;
  box["box"] = {1.0, 1.0, 1.0};
  SceneJson one;
  one["objects"] = SceneJson::array();
  one["objects"].push_back({{"name", "b"}, {"mesh", box}, {"mass", 1.0}});
  Scene s = scene_from_json(one);
  CHECK(s.assembly.object(0).world.vertices.size() == 8);
  CHECK(s.assembly.object(0).world.faces.size() == 6);
}

TEST_CASE("sawteeth terrain has no horizontal face") {
  Scene scene = scene_from_json(generate_scene("sawteeth"));
  CHECK(scene.allow_fixed_support);
  for (const auto& f : scene.assembly.object(0).world.faces) CHECK(std::abs(f.normal.z()) < 1.0 - 1e-9);
}

TEST_CASE("table scene: tabletop centre outranks the leg sides") {
  Scene scene = scene_from_json(generate_scene("table"));
  auto map = compute_sr_map(scene.assembly, 300.0);
  REQUIRE(map.has_value());
  auto ctx = make_equilibrium_context(scene.assembly);
  REQUIRE(ctx.has_value());

  // Tabletop centre pushed down: unbounded. Leg side pushed sideways: finite.
  Robustness top_centre = static_robustness(scene.assembly, *ctx, 5, {0.0, 0.0, 0.30}, -Vec3::UnitZ());
  Robustness leg_side = static_robustness(scene.assembly, *ctx, 1, {0.21 - 0.02, 0.21, 0.13}, Vec3::UnitX());
  CHECK(std::isinf(top_centre));
  CHECK(std::isfinite(leg_side));
  CHECK(leg_side > 0.0);
}

TEST_CASE("sr map export: colors and header") {
  SRMap map;
  for (int i = 0; i < 3; ++i) {
    SRSample s;
    s.position = Vec3(i, 0, 0);
    s.r = i == 0 ? kInf : (i == 1 ? 1.0 : 5.0);
    map.samples.push_back(s);
  }
  std::string path = "map_test.ply";
  export_sr_map(map, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  CHECK(text.find("ply") == 0);
  CHECK(text.find("comment static robustness map") != std::string::npos);
  CHECK(text.find("element vertex 3") != std::string::npos);
  // The unbounded sample renders black.
  CHECK(text.find("0 0 0.12") == std::string::npos);
  std::remove(path.c_str());

  CHECK(sr_colormap(0.0) == std::array<int, 3>{0, 0, 255});
  CHECK(sr_colormap(1.0) == std::array<int, 3>{255, 0, 0});
  CHECK(sr_colormap(0.5) != sr_colormap(0.9));
}

TEST_CASE("all-infinite map exports black points") {
  SRMap map;
  for (int i = 0; i < 4; ++i) {
    SRSample s;
    s.position = Vec3(i, 0, 0);
    s.r = kInf;
    map.samples.push_back(s);
  }
  std::string path = "map_inf.ply";
  export_sr_map(map, path);
  std::ifstream in(path);
  std::string line;
  bool header_done = false;
  int black = 0, rows = 0;
  while (std::getline(in, line)) {
    if (!header_done) {
      if (line == "end_header") header_done = true;
      continue;
    }
    ++rows;
    if (line.size() >= 5 && line.substr(line.size() - 5) == "0 0 0") ++black;
  }
  CHECK(rows == 4);
  CHECK(black == 4);
  std::remove(path.c_str());
}

TEST_CASE("metrics csv round trip") {
  std::vector<MetricsRecord> records(3);
  records[0] = {"cube", "sr", 42, true, 7, 12.5, 3.25, 0.04, true};
  records[1] = {"stack", "uniform", 43, false, 500, 800.0, kInf, 0.0, true};
  records[2] = {"canyon", "chance", 44, true, 99, 55.25, 1.5, 0.33, false};
  std::stringstream ss;
  write_metrics_csv(records, ss);
  auto parsed = read_metrics_csv(ss);
  REQUIRE(parsed.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(parsed[i].scene == records[i].scene);
    CHECK(parsed[i].variant == records[i].variant);
    CHECK(parsed[i].seed == records[i].seed);
    CHECK(parsed[i].success == records[i].success);
    CHECK(parsed[i].iterations == records[i].iterations);
    CHECK(parsed[i].wall_ms == doctest::Approx(records[i].wall_ms));
    CHECK(parsed[i].audit_ok == records[i].audit_ok);
  }
  CHECK(std::isinf(parsed[1].min_sr));
}

TEST_CASE("benchmark produces one record per cell run") {
  BenchConfig cfg;
  cfg.scenes = {"cube"};
  cfg.variants = {Variant::SRWeighted, Variant::Chance};
  cfg.runs = 3;
  cfg.planner.max_iterations = 40;
  auto records = run_benchmark(cfg);
  CHECK(records.size() == 6);
  int sr_ok = 0;
  for (const auto& r : records) {
    CHECK(r.audit_ok);
    if (r.variant == "sr" && r.success) ++sr_ok;
  }
  CHECK(sr_ok == 3);
}

TEST_CASE("loglog slope fit") {
  std::vector<double> x = {50, 150, 500, 1500};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(1.7).epsilon(1e-9));
}

TEST_CASE("object spec parsing") {
  PolyObject cube = parse_object_spec("cube:0.3", 2.0, 0.4);
  CHECK(cube.mesh.faces.size() == 6);
  CHECK(cube.mass == 2.0);
  CHECK(cube.mu == 0.4);
  PolyObject box = parse_object_spec("box:0.1,0.2,0.3", 1.0, 0.5);
  CHECK(box.mesh.bounds.max.z() == doctest::Approx(0.15));
  CHECK_THROWS(parse_object_spec("missing_file.obj", 1.0, 0.5));
}
