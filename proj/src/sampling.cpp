#include "placer/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace placer {

std::optional<std::vector<double>> point_probabilities(const SRMap& map, const SamplerState& state) {
  const double q = state.q();
  std::vector<double> w(map.samples.size(), 0.0);
  double max_assembly = 0.0;
  for (std::size_t i = 0; i < map.samples.size(); ++i) {
    const SRSample& s = map.samples[i];
    if (s.fixed) continue;
    w[i] = std::min(s.r, q);
    max_assembly = std::max(max_assembly, w[i]);
  }
  if (state.allow_fixed) {
    double base = max_assembly > 0.0 ? max_assembly : 1.0;
    double rate = std::pow(state.gamma, state.k) / (state.scene_scale * state.scene_scale);
    for (std::size_t i = 0; i < map.samples.size(); ++i) {
      const SRSample& s = map.samples[i];
      if (!s.fixed) continue;
      w[i] = base * std::exp(-rate * (s.position - state.scene_centroid).squaredNorm());
    }
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) return std::nullopt;
  for (double& x : w) x /= total;
  return w;
}

double init_q0(const SRMap& map, double target_prob) {
  double max_finite = 0.0, min_finite = kInf;
  int considered = 0, unbounded = 0;
  for (const auto& s : map.samples) {
    if (s.fixed) continue;
    ++considered;
    if (std::isfinite(s.r) && s.r > 0.0) {
      max_finite = std::max(max_finite, s.r);
      min_finite = std::min(min_finite, s.r);
    } else if (std::isinf(s.r)) {
      ++unbounded;
    }
  }
  if (considered == 0 || max_finite <= 0.0) return 1.0;  // degenerate map, sampler is uniform

  // Probability of the most robust finite sample as a function of q0.
  // Unimodal: rising while q0 clamps finite weights, peaking at q0 equal to
  // the max finite robustness, then falling as unbounded samples outgrow it.
  auto prob = [&](double q0) {
    double total = 0.0;
    for (const auto& s : map.samples) {
      if (s.fixed) continue;
      total += std::min(s.r, q0);
    }
    return std::min(max_finite, q0) / total;
  };
  const double peak = prob(max_finite);

  if (unbounded > 0) {
    // The finite points should stay rare while the saturation is high, so
    // resolve the target on the falling branch.
    if (peak <= target_prob) return max_finite * (target_prob / peak);
    double lo = max_finite, hi = max_finite * 1e6;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (prob(mid) > target_prob)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  if (peak < target_prob) return max_finite;  // target above the reachable peak
  if (prob(std::min(min_finite, max_finite) * 0.999999) >= target_prob) return min_finite;

  double lo = min_finite, hi = max_finite;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (prob(mid) < target_prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<std::pair<int, int>> sample_pair(const SRMap& map, const SamplerState& state, Rng& rng) {
  auto probs = point_probabilities(map, state);
  if (!probs) return std::nullopt;
  int positive = 0;
  for (double p : *probs)
    if (p > 0.0) ++positive;
  if (positive < 2) return std::nullopt;

  int first = static_cast<int>(rng.discrete(*probs));
  std::vector<double> rest = *probs;
  rest[first] = 0.0;
  double total = 0.0;
  for (double p : rest) total += p;
  for (double& p : rest) p /= total;
  int second = static_cast<int>(rng.discrete(rest));
  return std::make_pair(first, second);
}

}  // namespace placer
