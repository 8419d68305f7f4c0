#include "placer/scene.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace placer {

namespace {

SceneJson vec_json(const Vec3& v) { return SceneJson::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const SceneJson& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("scene: expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

SceneJson object_json(const std::string& name, const SceneJson& mesh, const Vec3& translation,
                      double mass, double mu, bool fixed, const Quat& q = Quat::Identity()) {
  SceneJson o;
  o["name"] = name;
  o["mesh"] = mesh;
  o["pose"] = {{"quaternion", SceneJson::array({q.w(), q.x(), q.y(), q.z()})},
               {"translation", vec_json(translation)}};
  o["mass"] = mass;
  o["mu"] = mu;
  o["fixed"] = fixed;
  return o;
}

SceneJson box_mesh(const Vec3& extents) {
  SceneJson m;
  m["box"] = vec_json(extents);
  return m;
}

SceneJson floor_json() { return object_json("floor", box_mesh({2.0, 2.0, 0.1}), {0, 0, -0.05}, 1.0, 0.5, true); }

SceneJson scene_header(const std::string& name) {
  SceneJson s;
  s["name"] = name;
  s["gravity"] = vec_json({0, 0, -9.81});
  s["allow_fixed_support"] = false;
  s["objects"] = SceneJson::array();
  return s;
}

// Square frustum, base at z = 0.
SceneJson frustum_mesh(double base, double top, double height) {
  SceneJson m;
  m["frustum"] = {{"base", base}, {"top", top}, {"height", height}};
  return m;
}

PolyMesh make_frustum(double base, double top, double height) {
  double b = base / 2, t = top / 2;
  std::vector<Vec3> v = {{-b, -b, 0}, {b, -b, 0}, {b, b, 0},      {-b, b, 0},
                         {-t, -t, height}, {t, -t, height}, {t, t, height}, {-t, t, height}};
  std::vector<std::array<int, 3>> tris = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7},
                                           {0, 1, 5}, {0, 5, 4}, {1, 2, 6}, {1, 6, 5},
                                           {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  return make_mesh(std::move(v), std::move(tris));
}

// Zigzag prism terrain: no face is horizontal (the bottom is tilted by one
// degree), yet the tooth slopes are shallow enough to take a placement.
SceneJson sawtooth_mesh() {
  SceneJson m;
  m["sawteeth"] = {{"teeth", 2}, {"width", 1.2}, {"slope_deg", 15.0}};
  return m;
}

PolyMesh make_sawteeth(int teeth, double width, double slope_deg) {
  const double pitch = width / teeth;
  const double valley = 0.1;
  const double apex = valley + (pitch / 2) * std::tan(slope_deg * M_PI / 180.0);
  const double tilt = std::tan(1.0 * M_PI / 180.0);
  std::vector<Vec2> profile;
  profile.push_back({-width / 2, -0.2});
  profile.push_back({width / 2, -0.2 + tilt * width});
  profile.push_back({width / 2, valley});
  for (int i = teeth; i-- > 0;) {
    double x0 = -width / 2 + i * pitch;
    profile.push_back({x0 + pitch / 2, apex});
    profile.push_back({x0, valley});
  }
  return make_extrusion(profile, -0.3, 0.3);
}

// Canyon wall: an L-shaped block. The inner ledge is too narrow to host an
// object alone (the raised lip blocks it) and the lip's top slopes outward,
// so placements must bridge the gap onto both ledges.
SceneJson canyon_mesh(double sign) {
  SceneJson m;
  m["canyon_wall"] = {{"side", sign}};
  return m;
}

PolyMesh make_canyon_wall(double sign) {
  // Profile in the xz-plane for the +x wall; mirrored for -x.
  const double inner = 0.1, lip = 0.2, outer = 0.4;
  const double ledge_z = 0.35, lip_z = 0.5;
  const double slope = std::tan(30.0 * M_PI / 180.0);
  std::vector<Vec2> profile = {{inner, 0},
                               {outer, 0},
                               {outer, lip_z - (outer - lip) * slope},
                               {lip, lip_z},
                               {lip, ledge_z},
                               {inner, ledge_z}};
  if (sign < 0) {
    for (auto& p : profile) p.x() = -p.x();
    std::reverse(profile.begin(), profile.end());
  }
  return make_extrusion(profile, -0.3, 0.3);
}

PolyMesh mesh_from_json(const SceneJson& m, const std::string& base_dir) {
  if (m.contains("box")) return make_box(vec_from(m["box"]));
  if (m.contains("sphere"))
    return make_uv_sphere(m["sphere"]["radius"].get<double>(), m["sphere"]["vertices"].get<int>());
  if (m.contains("bowl"))
    return make_bowl(m["bowl"]["radius"].get<double>(), m["bowl"]["vertices"].get<int>());
  if (m.contains("frustum"))
    return make_frustum(m["frustum"]["base"].get<double>(), m["frustum"]["top"].get<double>(),
                        m["frustum"]["height"].get<double>());
  if (m.contains("sawteeth"))
    return make_sawteeth(m["sawteeth"]["teeth"].get<int>(), m["sawteeth"]["width"].get<double>(),
                         m["sawteeth"]["slope_deg"].get<double>());
  if (m.contains("canyon_wall")) return make_canyon_wall(m["canyon_wall"]["side"].get<double>());
  if (m.contains("file")) {
    std::filesystem::path p = m["file"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    if (!std::filesystem::exists(p)) throw std::runtime_error("scene: mesh file not found: " + p.string());
    return load_obj(p.string());
  }
  throw std::runtime_error("scene: unknown mesh spec");
}

}  // namespace

SceneJson generate_scene(const std::string& name, int bowl_vertices) {
  SceneJson s = scene_header(name);
  auto& objs = s["objects"];

  if (name == "cube") {
    objs.push_back(floor_json());
    objs.push_back(object_json("base_cube", box_mesh({0.25, 0.25, 0.25}), {0, 0, 0.125}, 1.0, 0.5, false));
  } else if (name == "stack") {
    objs.push_back(floor_json());
    for (int i = 0; i < 3; ++i)
      objs.push_back(object_json("stack_" + std::to_string(i), box_mesh({0.25, 0.25, 0.25}),
                                 {0, 0, 0.125 + 0.25 * i}, 1.0, 0.5, false));
  } else if (name == "pyramids") {
    objs.push_back(floor_json());
    for (int i = 0; i < 3; ++i) {
      double ang = (90.0 + 120.0 * i) * M_PI / 180.0;
      Vec3 at(0.09 * std::cos(ang), 0.09 * std::sin(ang), 0.0);
      objs.push_back(
          object_json("pyramid_" + std::to_string(i), frustum_mesh(0.12, 0.05, 0.2), at, 0.6, 0.5, false));
    }
  } else if (name == "table") {
    objs.push_back(floor_json());
    double inset = 0.21;
    int leg = 0;
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        objs.push_back(object_json("leg_" + std::to_string(leg++), box_mesh({0.04, 0.04, 0.26}),
                                   {sx * inset, sy * inset, 0.13}, 0.15, 0.5, false));
    objs.push_back(object_json("tabletop", box_mesh({0.5, 0.5, 0.04}), {0, 0, 0.28}, 1.2, 0.5, false));
  } else if (name == "sawteeth") {
    objs.push_back(object_json("terrain", sawtooth_mesh(), {0, 0, 0}, 5.0, 0.5, true));
    s["allow_fixed_support"] = true;
  } else if (name == "canyon") {
    objs.push_back(floor_json());
    objs.push_back(object_json("wall_pos", canyon_mesh(+1.0), {0, 0, 0}, 3.0, 0.5, false));
    objs.push_back(object_json("wall_neg", canyon_mesh(-1.0), {0, 0, 0}, 3.0, 0.5, false));
  } else if (name == "bowl") {
    objs.push_back(floor_json());
    SceneJson m;
    m["bowl"] = {{"radius", 0.16}, {"vertices", bowl_vertices}};
    objs.push_back(object_json("bowl", m, {0, 0, 0}, 0.5, 0.5, false));
  } else {
    throw std::runtime_error("unknown scene name: " + name);
  }
  return s;
}

Scene scene_from_json(const SceneJson& json, const std::string& base_dir) {
  Scene scene;
  scene.name = json.value("name", "scene");
  scene.allow_fixed_support = json.value("allow_fixed_support", false);
  if (json.contains("gravity")) scene.assembly.gravity = vec_from(json["gravity"]);
  if (!json.contains("objects") || !json["objects"].is_array())
    throw std::runtime_error("scene: missing objects array");

  for (const auto& o : json["objects"]) {
    PolyObject obj;
    obj.name = o.value("name", "object");
    obj.mesh = mesh_from_json(o.at("mesh"), base_dir);
    bool fixed = o.value("fixed", false);
    obj.mass = o.value("mass", 1.0);
    if (!fixed && !(obj.mass > 0)) throw std::runtime_error("scene: non-fixed object needs mass > 0");
    obj.mu = o.value("mu", 0.5);
    if (obj.mu < 0) throw std::runtime_error("scene: negative friction coefficient");
    obj.com = o.contains("com") ? vec_from(o["com"]) : obj.mesh.centroid();

    Pose pose;
    if (o.contains("pose")) {
      const auto& p = o["pose"];
      if (p.contains("quaternion")) {
        const auto& q = p["quaternion"];
        if (!q.is_array() || q.size() != 4) throw std::runtime_error("scene: quaternion needs 4 entries");
        Quat quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>());
        if (std::abs(quat.norm() - 1.0) > 1e-6) throw std::runtime_error("scene: quaternion not unit norm");
        pose.R = quat.toRotationMatrix();
      }
      if (p.contains("translation")) pose.t = vec_from(p["translation"]);
    }
    scene.assembly.add(std::move(obj), pose, fixed);
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  SceneJson json = SceneJson::parse(in);
  return scene_from_json(json, std::filesystem::path(path).parent_path().string());
}

void save_scene(const SceneJson& json, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << json.dump(2) << "\n";
}

PolyObject parse_object_spec(const std::string& spec, double mass, double mu) {
  PolyObject obj;
  obj.mass = mass;
  obj.mu = mu;
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto nums = [&]() {
    std::vector<double> out;
    if (colon == std::string::npos) return out;
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
  }();

  if (kind == "cube") {
    double side = nums.empty() ? 0.25 : nums[0];
    obj.name = spec;
    obj.mesh = make_box({side, side, side});
  } else if (kind == "box" && nums.size() == 3) {
    obj.name = spec;
    obj.mesh = make_box({nums[0], nums[1], nums[2]});
  } else if (kind == "sphere" && !nums.empty()) {
    obj.name = spec;
    obj.mesh = make_uv_sphere(nums[0], nums.size() > 1 ? static_cast<int>(nums[1]) : 100);
  } else if (kind == "bowl" && !nums.empty()) {
    obj.name = spec;
    obj.mesh = make_bowl(nums[0], nums.size() > 1 ? static_cast<int>(nums[1]) : 150);
  } else {
    obj.name = std::filesystem::path(spec).stem().string();
    obj.mesh = load_obj(spec);
  }
  obj.com = obj.mesh.centroid();
  return obj;
}

}  // namespace placer
