#pragma once

#include <cstdint>
#include <vector>

#include "placer/placement.hpp"
#include "placer/sampling.hpp"

namespace placer {

enum class Variant { SRWeighted, Uniform, Chance };

struct PlannerConfig {
  int max_iterations = 500;
  Variant variant = Variant::SRWeighted;
  std::uint64_t seed = 0;
  double target_prob = 0.10;  // probability of the most robust point at k = 0
  double lambda = 0.99;
  double gamma = 0.5;
  double density = 200.0;  // surface samples per square meter
  bool allow_fixed_support = false;
  ValidationConfig validation;
};

struct StageCounts {
  int no_candidates = 0;
  int no_pairs = 0;
  int match_failed = 0;
  int degenerate_pose = 0;
  int penetration = 0;
  int no_contact = 0;
  int tension_screen = 0;
  int qp_infeasible = 0;
  int not_equilibrated = 0;
  int accepted = 0;

  void count(RejectReason reason) {
    switch (reason) {
      case RejectReason::Penetration: ++penetration; break;
      case RejectReason::NoContact: ++no_contact; break;
      case RejectReason::TensionScreen: ++tension_screen; break;
      case RejectReason::QPInfeasible: ++qp_infeasible; break;
      case RejectReason::NotEquilibrated: ++not_equilibrated; break;
    }
  }
};

struct PlacementReport {
  bool success = false;
  Pose pose;
  int iterations = 0;
  StageCounts stages;
  double srmap_ms = 0.0;
  double search_ms = 0.0;
  double min_sr_after = kInf;   // over the refreshed map
  double volume_after = 0.0;    // oriented-bounding-box volume, non-fixed objects
  std::vector<ContactInterface> interfaces;
  ForceSolution forces;
  std::string object_name;
};

// One placement search. On success the object is added to the assembly and
// the robustness map is refreshed for the reported min-SR.
PlacementReport plan_placement(Assembly& assembly, const PolyObject& object, const PlannerConfig& config);

// Variant dispatch; identical to plan_placement with config.variant set.
PlacementReport run_variant(Variant variant, Assembly& assembly, const PolyObject& object,
                            PlannerConfig config);

// Sequential placement of several objects against the growing assembly.
// Failures are recorded and the sequence continues. With
// `mass_weighted_order` objects are drawn without replacement with odds
// proportional to their mass, otherwise in the given order.
std::vector<PlacementReport> plan_sequence(Assembly& assembly, std::vector<PolyObject> objects,
                                           const PlannerConfig& config, bool mass_weighted_order);

}  // namespace placer
