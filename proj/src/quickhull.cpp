#include "placer/quickhull.hpp"

#include "placer/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

namespace placer {

namespace {

struct Facet {
  std::array<int, 3> v;
  Vec3 n;
  double d = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

Vec3 facet_normal(const std::vector<Vec3>& pts, int a, int b, int c) {
  return (pts[b] - pts[a]).cross(pts[c] - pts[a]);
}

ConvexHull planar_hull(const std::vector<Vec3>& pts, double eps) {
  // Best-fit plane through the centroid.
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  Vec3 normal = eig.eigenvectors().col(0);
  Vec3 u = any_perpendicular(normal);
  Vec3 v = normal.cross(u);

  struct P2 {
    double x, y;
    int idx;
  };
  std::vector<P2> q(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec3 r = pts[i] - c;
    q[i] = {r.dot(u), r.dot(v), static_cast<int>(i)};
  }
  std::sort(q.begin(), q.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  q.erase(std::unique(q.begin(), q.end(),
                      [eps](const P2& a, const P2& b) {
                        return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
                      }),
          q.end());
  if (q.size() < 3) return {};

  auto cross2 = [](const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  // Andrew monotone chain; strict turns drop collinear boundary points.
  std::vector<P2> hull(2 * q.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], q[i]) <= eps) --k;
    hull[k++] = q[i];
  }
  for (std::size_t i = q.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], q[i]) <= eps) --k;
    hull[k++] = q[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return {};

  ConvexHull out;
  out.planar = true;
  for (const auto& p : hull) out.vertices.push_back(pts[p.idx]);
  int n = static_cast<int>(hull.size());
  for (int i = 0; i < n; ++i) out.edges.emplace_back(i, (i + 1) % n);
  return out;
}

}  // namespace

std::optional<ConvexHull> quickhull(const std::vector<Vec3>& points) {
  if (points.size() < 3) return std::nullopt;

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-9 * std::max(1.0, scale);
  const double dim_eps = 1e-8 * std::max(1.0, scale);

  // Dimensionality probe: extreme pair, then farthest from line/plane.
  std::size_t i0 = 0, i1 = 0;
  double best = -1.0;
  for (int axis = 0; axis < 3; ++axis) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i][axis] < points[lo][axis]) lo = i;
      if (points[i][axis] > points[hi][axis]) hi = i;
    }
    double d = (points[hi] - points[lo]).norm();
    if (d > best) {
      best = d;
      i0 = lo;
      i1 = hi;
    }
  }
  if (best <= dim_eps) return std::nullopt;

  Vec3 dir = (points[i1] - points[i0]).normalized();
  std::size_t i2 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec3 r = points[i] - points[i0];
    double d = (r - r.dot(dir) * dir).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= dim_eps) return std::nullopt;  // collinear

  Vec3 n012 = facet_normal(points, static_cast<int>(i0), static_cast<int>(i1), static_cast<int>(i2)).normalized();
  std::size_t i3 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double d = std::abs(n012.dot(points[i] - points[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= dim_eps) {
    ConvexHull h = planar_hull(points, eps);
    if (h.vertices.size() < 3) return std::nullopt;
    return h;
  }

  // 3D quickhull on an initial tetrahedron.
  std::vector<Vec3> pts = points;
  Vec3 interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;

  std::vector<Facet> facets;
  auto make_facet = [&](int a, int b, int c) {
    Facet f;
    f.v = {a, b, c};
    Vec3 n = facet_normal(pts, a, b, c);
    double len = n.norm();
    n /= len;
    double d = n.dot(pts[a]);
    if (n.dot(interior) - d > 0) {  // keep outward orientation
      std::swap(f.v[1], f.v[2]);
      n = -n;
      d = n.dot(pts[f.v[0]]);
    }
    f.n = n;
    f.d = d;
    return f;
  };

  {
    int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2), d = static_cast<int>(i3);
    facets.push_back(make_facet(a, b, c));
    facets.push_back(make_facet(a, b, d));
    facets.push_back(make_facet(a, c, d));
    facets.push_back(make_facet(b, c, d));
  }

  auto assign_outside = [&](Facet& f, const std::vector<int>& candidates) {
    for (int idx : candidates) {
      if (idx == f.v[0] || idx == f.v[1] || idx == f.v[2]) continue;
      if (f.n.dot(pts[idx]) - f.d > eps) f.outside.push_back(idx);
    }
  };
  {
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
    for (auto& f : facets) assign_outside(f, all);
  }

  for (;;) {
    int fi = -1;
    double far_d = eps;
    int far_p = -1;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if (!facets[i].alive || facets[i].outside.empty()) continue;
      for (int idx : facets[i].outside) {
        double d = facets[i].n.dot(pts[idx]) - facets[i].d;
        if (d > far_d) {
          far_d = d;
          far_p = idx;
          fi = static_cast<int>(i);
        }
      }
    }
    if (fi < 0) break;

    // Visible set and horizon.
    std::vector<char> visible(facets.size(), 0);
    std::vector<int> stack{fi};
    visible[fi] = 1;
    std::vector<int> visible_list{fi};
    // Edge adjacency built on the fly: map directed edge -> facet.
    std::map<std::pair<int, int>, int> owner;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if (!facets[i].alive) continue;
      const auto& v = facets[i].v;
      for (int k = 0; k < 3; ++k)
        owner[{v[k], v[(k + 1) % 3]}] = static_cast<int>(i);
    }
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      const auto& v = facets[cur].v;
      for (int k = 0; k < 3; ++k) {
        auto it = owner.find({v[(k + 1) % 3], v[k]});
        if (it == owner.end()) continue;
        int nb = it->second;
        if (visible[nb]) continue;
        if (facets[nb].n.dot(pts[far_p]) - facets[nb].d > eps) {
          visible[nb] = 1;
          visible_list.push_back(nb);
          stack.push_back(nb);
        }
      }
    }

    std::vector<std::pair<int, int>> horizon;  // directed as seen from visible side
    for (int vi : visible_list) {
      const auto& v = facets[vi].v;
      for (int k = 0; k < 3; ++k) {
        auto it = owner.find({v[(k + 1) % 3], v[k]});
        if (it == owner.end() || !visible[it->second]) horizon.emplace_back(v[k], v[(k + 1) % 3]);
      }
    }

    std::vector<int> orphan;
    for (int vi : visible_list) {
      facets[vi].alive = false;
      for (int idx : facets[vi].outside)
        if (idx != far_p) orphan.push_back(idx);
      facets[vi].outside.clear();
    }

    for (const auto& e : horizon) {
      Facet f = make_facet(e.first, e.second, far_p);
      assign_outside(f, orphan);
      facets.push_back(f);
    }
  }

  // Gather vertices and edges; edges between coplanar facets are seams of a
  // merged face, not hull edges.
  std::map<int, int> remap;
  ConvexHull out;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    for (int idx : f.v) {
      if (!remap.count(idx)) {
        remap[idx] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts[idx]);
      }
    }
  }
  std::map<std::pair<int, int>, std::vector<int>> edge_facets;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (!facets[i].alive) continue;
    const auto& v = facets[i].v;
    for (int k = 0; k < 3; ++k) {
      int a = v[k], b = v[(k + 1) % 3];
      edge_facets[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(i));
    }
  }
  for (const auto& [e, fs] : edge_facets) {
    if (fs.size() != 2) continue;
    if (facets[fs[0]].n.cross(facets[fs[1]].n).norm() <= 1e-7) continue;
    out.edges.emplace_back(remap[e.first], remap[e.second]);
  }
  return out;
}

}  // namespace placer
