#include <cmath>
#include <stdexcept>

#include "placer/mesh.hpp"

namespace placer {

PolyMesh make_box(const Vec3& e) {
  Vec3 h = 0.5 * e;
  std::vector<Vec3> v = {
      {-h.x(), -h.y(), -h.z()}, {h.x(), -h.y(), -h.z()}, {h.x(), h.y(), -h.z()}, {-h.x(), h.y(), -h.z()},
      {-h.x(), -h.y(), h.z()},  {h.x(), -h.y(), h.z()},  {h.x(), h.y(), h.z()},  {-h.x(), h.y(), h.z()}};
  std::vector<std::array<int, 3>> t = {
      {0, 2, 1}, {0, 3, 2},  // bottom
      {4, 5, 6}, {4, 6, 7},  // top
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {1, 2, 6}, {1, 6, 5},  // +x
      {3, 0, 4}, {3, 4, 7}   // -x
  };
  return make_mesh(std::move(v), std::move(t));
}

PolyMesh make_uv_sphere(double radius, int vertex_budget) {
  int segs = std::max(3, static_cast<int>(std::round(std::sqrt(2.0 * std::max(8, vertex_budget)))));
  int rings = std::max(2, (std::max(8, vertex_budget) - 2) / segs);
  std::vector<Vec3> v;
  v.push_back({0, 0, radius});
  for (int r = 1; r <= rings; ++r) {
    double phi = M_PI * r / (rings + 1);
    double stagger = M_PI * (r % 2) / segs;  // keeps neighbouring triangles non-coplanar
    for (int s = 0; s < segs; ++s) {
      double th = 2.0 * M_PI * s / segs + stagger;
      v.push_back({radius * std::sin(phi) * std::cos(th), radius * std::sin(phi) * std::sin(th),
                   radius * std::cos(phi)});
    }
  }
  v.push_back({0, 0, -radius});
  int south = static_cast<int>(v.size()) - 1;
  auto ring = [&](int r, int s) { return 1 + r * segs + (s % segs); };
  std::vector<std::array<int, 3>> t;
  for (int s = 0; s < segs; ++s) t.push_back({0, ring(0, s), ring(0, s + 1)});
  for (int r = 0; r + 1 < rings; ++r)
    for (int s = 0; s < segs; ++s) {
      t.push_back({ring(r, s), ring(r + 1, s), ring(r + 1, s + 1)});
      t.push_back({ring(r, s), ring(r + 1, s + 1), ring(r, s + 1)});
    }
  for (int s = 0; s < segs; ++s) t.push_back({south, ring(rings - 1, s + 1), ring(rings - 1, s)});
  return make_mesh(std::move(v), std::move(t));
}

PolyMesh make_bowl(double radius, int vertex_budget) {
  // Solid of revolution: outer spherical wall, flat rim, inner spherical
  // cavity, both bottoms flattened so the bowl rests at z = 0.
  const double R = radius;
  const double Ri = 0.82 * radius;
  const double zc = R;               // sphere centres sit on the rim plane
  const double z_flat = 0.12 * R;    // outer flattening height
  const double z_in = 0.45 * R;      // inner cavity floor height
  const double rb = std::sqrt(R * R - (zc - z_flat) * (zc - z_flat));
  const double rbi = std::sqrt(Ri * Ri - (zc - z_in) * (zc - z_in));

  int n = std::max(24, vertex_budget);
  int arc = std::max(2, static_cast<int>(std::round(std::sqrt(n / 8.0))));
  int segs = std::max(6, (n - 2) / (2 * arc + 2));

  std::vector<Vec3> v;
  std::vector<std::array<int, 3>> t;
  v.push_back({0, 0, 0});  // bottom centre
  auto add_ring = [&](double r, double z) {
    int base = static_cast<int>(v.size());
    for (int s = 0; s < segs; ++s) {
      double th = 2.0 * M_PI * s / segs;
      v.push_back({r * std::cos(th), r * std::sin(th), z});
    }
    return base;
  };

  std::vector<int> rings;
  rings.push_back(add_ring(rb, 0.0));
  // outer wall up the sphere from the flattening to the rim
  double phi0 = std::asin(rb / R);  // polar angle from the downward axis
  for (int k = 1; k <= arc; ++k) {
    double phi = phi0 + (M_PI / 2 - phi0) * k / arc;
    rings.push_back(add_ring(R * std::sin(phi), zc - R * std::cos(phi)));
  }
  rings.push_back(add_ring(Ri, zc));  // inner rim
  // inner wall down the cavity sphere
  double phi1 = std::asin(rbi / Ri);
  for (int k = 1; k <= arc; ++k) {
    double phi = M_PI / 2 - (M_PI / 2 - phi1) * k / arc;
    rings.push_back(add_ring(Ri * std::sin(phi), zc - Ri * std::cos(phi)));
  }
  v.push_back({0, 0, z_in});  // cavity floor centre
  int top_c = static_cast<int>(v.size()) - 1;

  auto band = [&](int ra, int rb2, bool out) {
    for (int s = 0; s < segs; ++s) {
      int a0 = ra + s, a1 = ra + (s + 1) % segs;
      int b0 = rb2 + s, b1 = rb2 + (s + 1) % segs;
      if (out) {
        t.push_back({a0, a1, b1});
        t.push_back({a0, b1, b0});
      } else {
        t.push_back({a0, b1, a1});
        t.push_back({a0, b0, b1});
      }
    }
  };
  for (int s = 0; s < segs; ++s) t.push_back({0, rings[0] + (s + 1) % segs, rings[0] + s});  // bottom fan, down
  for (std::size_t k = 0; k + 1 < rings.size(); ++k) band(rings[k], rings[k + 1], true);
  int last = rings.back();
  for (int s = 0; s < segs; ++s) t.push_back({top_c, last + s, last + (s + 1) % segs});  // cavity floor fan, up
  return make_mesh(std::move(v), std::move(t));
}

namespace {

// Ear clipping for a simple CCW polygon.
std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2>& poly) {
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
  auto cross = [&](int a, int b, int c) {
    Vec2 u = poly[b] - poly[a], w = poly[c] - poly[b];
    return u.x() * w.y() - u.y() * w.x();
  };
  auto inside = [&](int a, int b, int c, int p) {
    auto side = [&](int i, int j) {
      Vec2 u = poly[j] - poly[i], w = poly[p] - poly[i];
      return u.x() * w.y() - u.y() * w.x();
    };
    return side(a, b) >= -1e-12 && side(b, c) >= -1e-12 && side(c, a) >= -1e-12;
  };
  std::vector<std::array<int, 3>> tris;
  int guard = 0;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      int a = idx[(i + idx.size() - 1) % idx.size()];
      int b = idx[i];
      int c = idx[(i + 1) % idx.size()];
      if (cross(a, b, c) <= 1e-14) continue;  // reflex or collinear
      bool ear = true;
      for (int p : idx) {
        if (p == a || p == b || p == c) continue;
        if (inside(a, b, c, p)) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped && ++guard > 2) throw std::runtime_error("triangulate: not a simple polygon");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

}  // namespace

PolyMesh make_extrusion(const std::vector<Vec2>& profile_xz, double y0, double y1) {
  const int n = static_cast<int>(profile_xz.size());
  if (n < 3) throw std::runtime_error("extrusion: profile too small");
  std::vector<Vec3> v;
  for (const auto& p : profile_xz) v.push_back({p.x(), y0, p.y()});
  for (const auto& p : profile_xz) v.push_back({p.x(), y1, p.y()});
  std::vector<std::array<int, 3>> t;
  auto caps = triangulate_polygon(profile_xz);
  // Profile CCW in the xz-plane means its 2D normal is -y: the y0 cap faces -y.
  for (const auto& c : caps) {
    t.push_back({c[0], c[1], c[2]});
    t.push_back({c[0] + n, c[2] + n, c[1] + n});
  }
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    t.push_back({i, n + j, j});
    t.push_back({i, n + i, n + j});
  }
  PolyMesh mesh = make_mesh(std::move(v), std::move(t));
  return mesh;
}

}  // namespace placer
