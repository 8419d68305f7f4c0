#include "placer/planner.hpp"

#include <chrono>
#include <cmath>

namespace placer {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void finish_success(Assembly& assembly, const PolyObject& object, const Pose& pose,
                    const PlannerConfig& config, PlacementReport& report) {
  assembly.add(object, pose, false);
  report.success = true;
  report.pose = pose;
  ++report.stages.accepted;
  auto map = compute_sr_map(assembly, config.density);
  report.min_sr_after = map ? map->min_finite() : 0.0;
  report.volume_after = assembly_obb_volume(assembly);
}

PlacementReport plan_by_sampling(Assembly& assembly, const PolyObject& object,
                                 const PlannerConfig& config) {
  PlacementReport report;
  report.object_name = object.name;
  Rng rng(config.seed);

  auto t0 = Clock::now();
  auto map = compute_sr_map(assembly, config.density);
  report.srmap_ms = ms_since(t0);
  if (!map) {
    report.iterations = 0;
    return report;  // assembly not in equilibrium: nothing can be planned
  }

  SamplerState state;
  state.q0 = init_q0(*map, config.target_prob);
  state.lambda = config.lambda;
  state.gamma = config.gamma;
  state.allow_fixed = config.allow_fixed_support;
  state.scene_centroid = assembly.scene_centroid();
  state.scene_scale = assembly.scene_scale();

  // The uniform variant keeps the same candidate support but equal weights.
  SRMap uniform_map;
  if (config.variant == Variant::Uniform) {
    uniform_map = *map;
    for (auto& s : uniform_map.samples)
      if (!s.fixed) s.r = 1.0;
    state.q0 = 1.0;
    state.scene_scale = 1e9;  // flattens the fixed-support weighting
  }
  const SRMap& active_map = config.variant == Variant::Uniform ? uniform_map : *map;

  auto t1 = Clock::now();
  for (int k = 0; k < config.max_iterations; ++k) {
    report.iterations = k + 1;
    state.k = k;
    auto pair_idx = sample_pair(active_map, state, rng);
    if (!pair_idx) {
      ++report.stages.no_candidates;
      if (k == 0) break;  // no candidates will ever appear
      continue;
    }
    const SRSample& sa = map->samples[pair_idx->first];
    const SRSample& sb = map->samples[pair_idx->second];
    SceneContactSample a{sa.position, sa.normal, sa.owner, sa.face};
    SceneContactSample b{sb.position, sb.normal, sb.owner, sb.face};
    double L = (a.position - b.position).norm();
    if (L < 1e-9) {
      ++report.stages.no_pairs;
      continue;
    }

    auto pairs = enumerate_feature_pairs(object.mesh, a, b, L);
    if (pairs.empty()) {
      ++report.stages.no_pairs;
      continue;
    }
    const FeaturePair& pick = pairs[rng.uniform_index(pairs.size())];
    auto points = match_feature_pair(object.mesh, object.com, pick, L);
    if (!points) {
      ++report.stages.match_failed;
      continue;
    }

    struct Anchor {
      Vec3 s_pos, s_normal, o_q, o_r, o_normal;
    };
    Anchor anchors[2] = {
        {a.position, a.normal, points->q, points->r, feature_normal(object.mesh, pick.f1)},
        {b.position, b.normal, points->r, points->q, feature_normal(object.mesh, pick.f2)},
    };
    const Vec3 other_pos[2] = {b.position, a.position};
    bool degenerate = true;
    for (int c = 0; c < 2; ++c) {
      auto pose = determine_pose(anchors[c].s_pos, other_pos[c], anchors[c].s_normal, anchors[c].o_q,
                                 anchors[c].o_r, anchors[c].o_normal);
      if (!pose) continue;
      degenerate = false;
      auto validation = validate_pose(*pose, object, assembly, config.validation);
      if (validation.accepted) {
        report.interfaces = validation.interfaces;
        report.forces = validation.forces;
        report.search_ms = ms_since(t1);
        finish_success(assembly, object, *pose, config, report);
        return report;
      }
      report.stages.count(validation.reason);
    }
    if (degenerate) ++report.stages.degenerate_pose;
  }
  report.search_ms = ms_since(t1);
  return report;
}

PlacementReport plan_by_chance(Assembly& assembly, const PolyObject& object, const PlannerConfig& config) {
  PlacementReport report;
  report.object_name = object.name;
  Rng rng(config.seed);

  Aabb box = assembly.bounds(false);
  double radius = object.mesh.circumradius(object.com);
  box = box.inflated(radius);

  auto t1 = Clock::now();
  for (int k = 0; k < config.max_iterations; ++k) {
    report.iterations = k + 1;
    // Uniform orientation from three uniforms.
    double u1 = rng.uniform01(), u2 = rng.uniform01(), u3 = rng.uniform01();
    Quat quat(std::sqrt(u1) * std::cos(2 * M_PI * u3), std::sqrt(1 - u1) * std::sin(2 * M_PI * u2),
              std::sqrt(1 - u1) * std::cos(2 * M_PI * u2), std::sqrt(u1) * std::sin(2 * M_PI * u3));
    Vec3 t(rng.uniform(box.min.x(), box.max.x()), rng.uniform(box.min.y(), box.max.y()),
           rng.uniform(box.min.z(), box.max.z()));
    Pose pose{quat.normalized().toRotationMatrix(), t};

    auto validation = validate_pose(pose, object, assembly, config.validation);
    if (validation.accepted) {
      report.interfaces = validation.interfaces;
      report.forces = validation.forces;
      report.search_ms = ms_since(t1);
      finish_success(assembly, object, pose, config, report);
      return report;
    }
    report.stages.count(validation.reason);
  }
  report.search_ms = ms_since(t1);
  return report;
}

}  // namespace

PlacementReport plan_placement(Assembly& assembly, const PolyObject& object, const PlannerConfig& config) {
  if (config.variant == Variant::Chance) return plan_by_chance(assembly, object, config);
  return plan_by_sampling(assembly, object, config);
}

PlacementReport run_variant(Variant variant, Assembly& assembly, const PolyObject& object,
                            PlannerConfig config) {
  config.variant = variant;
  return plan_placement(assembly, object, config);
}

std::vector<PlacementReport> plan_sequence(Assembly& assembly, std::vector<PolyObject> objects,
                                           const PlannerConfig& config, bool mass_weighted_order) {
  std::vector<PlacementReport> reports;
  Rng order_rng(hash_mix(config.seed ^ 0x5eedull));

  std::vector<std::size_t> order;
  if (mass_weighted_order) {
    std::vector<std::size_t> remaining(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) remaining[i] = i;
    while (!remaining.empty()) {
      std::vector<double> w;
      double total = 0.0;
      for (std::size_t idx : remaining) total += objects[idx].mass;
      for (std::size_t idx : remaining) w.push_back(objects[idx].mass / total);
      std::size_t pick = order_rng.discrete(w);
      order.push_back(remaining[pick]);
      remaining.erase(remaining.begin() + static_cast<long>(pick));
    }
  } else {
    for (std::size_t i = 0; i < objects.size(); ++i) order.push_back(i);
  }

  for (std::size_t n = 0; n < order.size(); ++n) {
    PlannerConfig cfg = config;
    cfg.seed = hash_mix(config.seed + 0x9e37 * (n + 1));
    reports.push_back(plan_placement(assembly, objects[order[n]], cfg));
  }
  return reports;
}

}  // namespace placer
