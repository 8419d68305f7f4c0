#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "placer/core.hpp"
#include "placer/quickhull.hpp"

namespace placer {

inline Vec3 random_unit(Rng& rng) {
  for (;;) {
    Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

inline Vec3 random_vec(Rng& rng, double scale) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline Mat3 random_rotation(Rng& rng) {
  Vec3 axis = random_unit(rng);
  return Mat3(Eigen::AngleAxisd(rng.uniform(0, 2 * M_PI), axis));
}

// O(n^4) hull oracle: a triple spans a facet when all points lie on one side.
// Returns extreme vertices and hull edges as index pairs into `pts`.
struct BruteHull {
  std::set<int> vertices;
  std::set<std::pair<int, int>> edges;
};

inline BruteHull brute_force_hull(const std::vector<Vec3>& pts, double eps = 1e-10) {
  BruteHull out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec3 nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (nrm.norm() < eps) continue;
        nrm.normalize();
        double d = nrm.dot(pts[i]);
        bool above = false, below = false;
        for (int m = 0; m < n; ++m) {
          double s = nrm.dot(pts[m]) - d;
          if (s > eps) above = true;
          if (s < -eps) below = true;
        }
        if (above && below) continue;
        out.vertices.insert(i);
        out.vertices.insert(j);
        out.vertices.insert(k);
        out.edges.insert({std::min(i, j), std::max(i, j)});
        out.edges.insert({std::min(j, k), std::max(j, k)});
        out.edges.insert({std::min(i, k), std::max(i, k)});
      }
  return out;
}

}  // namespace placer
