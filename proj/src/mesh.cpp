#include "placer/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace placer {

namespace {

Vec3 tri_normal(const std::vector<Vec3>& v, const std::array<int, 3>& t) {
  return (v[t[1]] - v[t[0]]).cross(v[t[2]] - v[t[0]]);
}

// Chains directed boundary edges into closed loops.
std::vector<std::vector<int>> chain_loops(const std::vector<std::pair<int, int>>& border) {
  std::multimap<int, int> next;
  for (const auto& e : border) next.insert({e.first, e.second});
  std::vector<std::vector<int>> loops;
  while (!next.empty()) {
    auto it = next.begin();
    std::vector<int> loop{it->first};
    int cur = it->second;
    next.erase(it);
    while (cur != loop.front()) {
      loop.push_back(cur);
      auto jt = next.find(cur);
      if (jt == next.end()) throw std::runtime_error("mesh: open boundary loop");
      cur = jt->second;
      next.erase(jt);
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

double loop_area(const std::vector<Vec3>& v, const std::vector<int>& loop, const Vec3& n) {
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a = v[loop[i]];
    const Vec3& b = v[loop[(i + 1) % loop.size()]];
    acc += a.cross(b);
  }
  return 0.5 * acc.dot(n);
}

std::vector<int> drop_collinear(const std::vector<Vec3>& v, const std::vector<int>& loop) {
  std::vector<int> out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& prev = v[loop[(i + n - 1) % n]];
    const Vec3& cur = v[loop[i]];
    const Vec3& nxt = v[loop[(i + 1) % n]];
    Vec3 a = cur - prev, b = nxt - cur;
    if (a.cross(b).norm() > 1e-7 * a.norm() * b.norm()) out.push_back(loop[i]);
  }
  return out.size() >= 3 ? out : loop;
}

bool loop_convex(const std::vector<Vec3>& v, const std::vector<int>& loop, const Vec3& n) {
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    Vec3 a = v[loop[(i + 1) % m]] - v[loop[i]];
    Vec3 b = v[loop[(i + 2) % m]] - v[loop[(i + 1) % m]];
    if (a.cross(b).dot(n) < -1e-9 * a.norm() * b.norm()) return false;
  }
  return true;
}

}  // namespace

PolyMesh make_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles) {
  PolyMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  const auto& V = mesh.vertices;
  auto& T = mesh.triangles;
  if (V.size() < 4 || T.size() < 4) throw std::runtime_error("mesh: too few vertices/triangles");

  for (const auto& t : T) {
    for (int idx : t)
      if (idx < 0 || idx >= static_cast<int>(V.size())) throw std::runtime_error("mesh: index out of range");
    if (tri_normal(V, t).norm() < 1e-14) throw std::runtime_error("mesh: degenerate triangle");
  }

  // Watertight and orientable: every directed edge used exactly once.
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const auto& t = T[i];
    for (int k = 0; k < 3; ++k) {
      auto key = std::make_pair(t[k], t[(k + 1) % 3]);
      if (directed.count(key)) throw std::runtime_error("mesh: non-orientable or duplicated triangle");
      directed[key] = static_cast<int>(i);
    }
  }
  for (const auto& [e, tri] : directed) {
    (void)tri;
    if (!directed.count({e.second, e.first})) throw std::runtime_error("mesh: not watertight");
  }

  double vol6 = 0.0;
  for (const auto& t : T) vol6 += V[t[0]].dot(V[t[1]].cross(V[t[2]]));
  if (std::abs(vol6) < 1e-14) throw std::runtime_error("mesh: zero volume");
  if (vol6 < 0) {
    for (auto& t : T) std::swap(t[1], t[2]);
    directed.clear();
    for (std::size_t i = 0; i < T.size(); ++i)
      for (int k = 0; k < 3; ++k) directed[{T[i][k], T[i][(k + 1) % 3]}] = static_cast<int>(i);
  }

  // Merge coplanar neighbours into faces. Candidates must stay within the
  // angular tolerance of the seed triangle and on its plane.
  const double cos_merge = std::cos(tol::kMergeAngleDeg * M_PI / 180.0);
  std::vector<Vec3> tn(T.size());
  std::vector<double> ta(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    Vec3 n = tri_normal(V, T[i]);
    ta[i] = 0.5 * n.norm();
    tn[i] = n.normalized();
  }
  std::vector<int> face_of(T.size(), -1);
  for (std::size_t seed = 0; seed < T.size(); ++seed) {
    if (face_of[seed] != -1) continue;
    int fid = static_cast<int>(mesh.faces.size());
    Vec3 n0 = tn[seed];
    double d0 = n0.dot(V[T[seed][0]]);
    std::vector<int> stack{static_cast<int>(seed)};
    face_of[seed] = fid;
    MeshFace face;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      face.tris.push_back(cur);
      const auto& t = T[cur];
      for (int k = 0; k < 3; ++k) {
        auto it = directed.find({t[(k + 1) % 3], t[k]});
        int nb = it->second;
        if (face_of[nb] != -1) continue;
        if (tn[nb].dot(n0) < cos_merge) continue;
        bool coplanar = true;
        for (int idx : T[nb])
          if (std::abs(n0.dot(V[idx]) - d0) > tol::kMergePlane) coplanar = false;
        if (!coplanar) continue;
        face_of[nb] = fid;
        stack.push_back(nb);
      }
    }
    Vec3 n_acc = Vec3::Zero();
    double area = 0.0;
    for (int ti : face.tris) {
      n_acc += ta[ti] * tn[ti];
      area += ta[ti];
    }
    face.normal = n_acc.normalized();
    double d_acc = 0.0;
    int cnt = 0;
    for (int ti : face.tris)
      for (int idx : T[ti]) {
        d_acc += face.normal.dot(V[idx]);
        ++cnt;
      }
    face.offset = d_acc / cnt;
    face.area = area;
    mesh.faces.push_back(std::move(face));
  }

  // Boundary loops per face: directed edges used once within the face.
  for (auto& face : mesh.faces) {
    std::map<std::pair<int, int>, int> use;
    for (int ti : face.tris) {
      const auto& t = T[ti];
      for (int k = 0; k < 3; ++k) {
        ++use[{t[k], t[(k + 1) % 3]}];
      }
    }
    std::vector<std::pair<int, int>> border;
    for (const auto& [e, c] : use) {
      (void)c;
      if (!use.count({e.second, e.first})) border.push_back(e);
    }
    auto loops = chain_loops(border);
    for (auto& l : loops) l = drop_collinear(V, l);
    std::sort(loops.begin(), loops.end(), [&](const auto& a, const auto& b) {
      return std::abs(loop_area(V, a, face.normal)) > std::abs(loop_area(V, b, face.normal));
    });
    face.loops = std::move(loops);
    face.convex = face.loops.size() == 1 && loop_convex(V, face.loops[0], face.normal);
  }

  // Feature edges between distinct faces, collinear runs chained.
  struct SubEdge {
    int a, b;    // vertex indices, directed with face f1 on its left
    int t1, t2;  // owning triangles in f1 / f2
  };
  std::map<std::pair<int, int>, std::vector<SubEdge>> groups;
  for (const auto& [e, t1] : directed) {
    if (e.first > e.second) continue;  // visit each undirected edge once
    int t2 = directed.at({e.second, e.first});
    int fa = face_of[t1], fb = face_of[t2];
    if (fa == fb) continue;
    auto key = std::make_pair(std::min(fa, fb), std::max(fa, fb));
    SubEdge se{e.first, e.second, t1, t2};
    if (fa != key.first) se = SubEdge{e.second, e.first, t2, t1};
    groups[key].push_back(se);
  }

  for (const auto& [key, subs] : groups) {
    // Partition the group into collinear chains.
    std::vector<char> used(subs.size(), 0);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      Vec3 dir = (V[subs[i].b] - V[subs[i].a]).normalized();
      int head = subs[i].a, tail = subs[i].b;
      int rep = static_cast<int>(i);
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t j = 0; j < subs.size(); ++j) {
          if (used[j]) continue;
          Vec3 dj = (V[subs[j].b] - V[subs[j].a]).normalized();
          if (dir.cross(dj).norm() > 1e-9) continue;
          if (subs[j].a == tail) {
            tail = subs[j].b;
            used[j] = 1;
            grew = true;
          } else if (subs[j].b == head) {
            head = subs[j].a;
            used[j] = 1;
            grew = true;
          }
        }
      }
      FeatureEdge fe;
      fe.f1 = key.first;
      fe.f2 = key.second;
      fe.p0 = V[head];
      fe.p1 = V[tail];
      fe.length = (fe.p1 - fe.p0).norm();
      fe.dir = (fe.p1 - fe.p0) / fe.length;
      fe.n1 = mesh.faces[fe.f1].normal;
      fe.n2 = mesh.faces[fe.f2].normal;
      // Orient so the side vector of f1 points into f1's interior; the
      // opposite third vertex of the owning triangle marks that side.
      const auto& t1 = T[subs[rep].t1];
      int opp = t1[0] + t1[1] + t1[2] - subs[rep].a - subs[rep].b;
      Vec3 mid = 0.5 * (V[subs[rep].a] + V[subs[rep].b]);
      Vec3 s1 = fe.dir.cross(fe.n1);
      if (s1.dot(V[opp] - mid) < 0) {
        fe.dir = -fe.dir;
        std::swap(fe.p0, fe.p1);
        s1 = -s1;
      }
      fe.s1 = s1.normalized();
      fe.s2 = fe.n2.cross(fe.dir).normalized();
      mesh.edges.push_back(fe);
    }
  }

  for (const auto& p : V) mesh.bounds.grow(p);
  return mesh;
}

double PolyMesh::volume() const {
  double vol6 = 0.0;
  for (const auto& t : triangles) vol6 += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
  return vol6 / 6.0;
}

Vec3 PolyMesh::centroid() const {
  double vol6 = 0.0;
  Vec3 acc = Vec3::Zero();
  for (const auto& t : triangles) {
    double d = vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
    vol6 += d;
    acc += d * (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]);
  }
  return acc / (4.0 * vol6);
}

double PolyMesh::circumradius(const Vec3& about) const {
  double r = 0.0;
  for (const auto& p : vertices) r = std::max(r, (p - about).norm());
  return r;
}

bool PolyMesh::point_on_face(int face, const Vec3& p, double plane_tol) const {
  const MeshFace& f = faces[face];
  if (std::abs(f.normal.dot(p) - f.offset) > plane_tol) return false;
  for (int ti : f.tris) {
    const auto& t = triangles[ti];
    const Vec3& a = vertices[t[0]];
    Vec3 v0 = vertices[t[1]] - a, v1 = vertices[t[2]] - a, v2 = p - a;
    double d00 = v0.dot(v0), d01 = v0.dot(v1), d11 = v1.dot(v1);
    double d20 = v2.dot(v0), d21 = v2.dot(v1);
    double denom = d00 * d11 - d01 * d01;
    double v = (d11 * d20 - d01 * d21) / denom;
    double w = (d00 * d21 - d01 * d20) / denom;
    double eps = 1e-9;
    if (v >= -eps && w >= -eps && 1.0 - v - w >= -eps) return true;
  }
  return false;
}

PolyMesh PolyMesh::transformed(const Pose& pose) const {
  PolyMesh out = *this;
  for (auto& v : out.vertices) v = pose.apply(v);
  for (auto& f : out.faces) {
    f.normal = pose.rotate(f.normal);
    f.offset = f.offset + f.normal.dot(pose.t);
  }
  for (auto& e : out.edges) {
    e.p0 = pose.apply(e.p0);
    e.p1 = pose.apply(e.p1);
    e.dir = pose.rotate(e.dir);
    e.n1 = pose.rotate(e.n1);
    e.n2 = pose.rotate(e.n2);
    e.s1 = pose.rotate(e.s1);
    e.s2 = pose.rotate(e.s2);
  }
  out.bounds = Aabb{};
  for (const auto& v : out.vertices) out.bounds.grow(v);
  return out;
}

PolyMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      ss >> p.x() >> p.y() >> p.z();
      verts.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        idx.push_back(std::stoi(tok.substr(0, tok.find('/'))) - 1);
      }
      for (std::size_t k = 2; k < idx.size(); ++k)
        tris.push_back({idx[0], idx[k - 1], idx[k]});
    }
  }
  return make_mesh(std::move(verts), std::move(tris));
}

void save_obj(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file: " + path);
  out.precision(17);
  for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& t : mesh.triangles) out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

}  // namespace placer
