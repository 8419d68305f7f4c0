#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "placer/assembly.hpp"

namespace placer {

using SceneJson = nlohmann::ordered_json;

// Loaded scene plus sampler hints carried by the file.
struct Scene {
  Assembly assembly;
  bool allow_fixed_support = false;
  std::string name;
};

// Deterministic built-in scenes: cube, stack, pyramids, table, sawteeth,
// canyon, bowl. The bowl takes the requested vertex budget. Throws on an
// unknown name.
SceneJson generate_scene(const std::string& name, int bowl_vertices = 150);

// Instantiates meshes (primitives or referenced files), applies poses and
// validates the schema. `base_dir` resolves relative mesh paths.
Scene scene_from_json(const SceneJson& json, const std::string& base_dir = ".");

Scene load_scene(const std::string& path);
void save_scene(const SceneJson& json, const std::string& path);

// Object specs for the CLI: "cube:S", "box:X,Y,Z", "sphere:R,V", "bowl:R,V"
// or a Wavefront file path. Mass and friction from the arguments; the centre
// of mass defaults to the mesh centroid.
PolyObject parse_object_spec(const std::string& spec, double mass, double mu);

}  // namespace placer
