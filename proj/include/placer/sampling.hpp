#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "placer/robustness.hpp"

namespace placer {

// State of the robustness-weighted point sampler. The saturation Q decays
// geometrically with the iteration count so that every surface point is
// eventually drawn with near-uniform probability.
struct SamplerState {
  double q0 = 1.0;
  double lambda = 0.99;  // saturation decay per iteration, in (0,1)
  double gamma = 0.5;    // fixed-support concentration decay, in (0,1]
  int k = 0;
  double scene_scale = 1.0;
  Vec3 scene_centroid{0, 0, 0};
  bool allow_fixed = false;

  double q() const { return q0 * std::pow(lambda, k); }
};

// Sampling probabilities over the map: assembly samples weigh min(r, Q_k);
// fixed-support samples (when allowed) weigh the maximum assembly weight
// shaped by a centroid-centred Gaussian whose concentration relaxes with k.
// Empty when no sample has positive weight.
std::optional<std::vector<double>> point_probabilities(const SRMap& map, const SamplerState& state);

// Saturation start value: the most robust finite sample should carry the
// target probability at k = 0. Solved by bisection on the monotone segment;
// unreachable targets clamp to the nearest end (max finite robustness for
// high targets, min finite for targets below the uniform share).
double init_q0(const SRMap& map, double target_prob);

// Two distinct samples drawn without replacement from the current
// probabilities. Empty when fewer than two samples have positive weight.
std::optional<std::pair<int, int>> sample_pair(const SRMap& map, const SamplerState& state, Rng& rng);

}  // namespace placer
