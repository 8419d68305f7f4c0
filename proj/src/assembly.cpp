#include "placer/assembly.hpp"

#include <Eigen/Eigenvalues>

namespace placer {

int Assembly::add(PolyObject object, const Pose& pose, bool fixed) {
  PlacedObject po;
  po.world = object.mesh.transformed(pose);
  po.com_world = pose.apply(object.com);
  po.object = std::move(object);
  po.pose = pose;
  po.fixed = fixed;
  objects_.push_back(std::move(po));
  rebuild_contacts();
  return static_cast<int>(objects_.size()) - 1;
}

void Assembly::rebuild_contacts(double contact_tol) {
  interfaces_.clear();
  contacts_.clear();
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (objects_[i].fixed && objects_[j].fixed) continue;
      auto found = resolve_contacts(objects_[i].world, i, objects_[i].object.mu, objects_[j].world, j,
                                    objects_[j].object.mu, gravity, contact_tol);
      for (auto& ci : found) interfaces_.push_back(std::move(ci));
    }
  }
  contacts_ = interface_contact_points(interfaces_);
}

std::vector<BodyState> Assembly::body_states() const {
  std::vector<BodyState> out;
  out.reserve(objects_.size());
  for (const auto& po : objects_) out.push_back({po.object.mass, po.com_world, po.fixed});
  return out;
}

Aabb Assembly::bounds(bool include_fixed) const {
  Aabb box;
  bool any = false;
  for (const auto& po : objects_) {
    if (!include_fixed && po.fixed) continue;
    any = true;
    box.grow(po.world.bounds.min);
    box.grow(po.world.bounds.max);
  }
  if (!any)
    for (const auto& po : objects_) {
      box.grow(po.world.bounds.min);
      box.grow(po.world.bounds.max);
    }
  return box;
}

Vec3 Assembly::scene_centroid() const { return bounds(false).center(); }

double Assembly::scene_scale() const {
  Vec3 c = scene_centroid();
  double r = 0.0;
  for (const auto& po : objects_) {
    if (po.fixed) continue;
    for (const auto& v : po.world.vertices) r = std::max(r, (v - c).norm());
  }
  if (r == 0.0)
    for (const auto& po : objects_)
      for (const auto& v : po.world.vertices) r = std::max(r, (v - c).norm());
  return std::max(r, 1e-6);
}

double Assembly::total_non_fixed_surface_area() const {
  double area = 0.0;
  for (const auto& po : objects_) {
    if (po.fixed) continue;
    for (const auto& f : po.world.faces) area += f.area;
  }
  return area;
}

double assembly_obb_volume(const Assembly& assembly) {
  std::vector<Vec3> pts;
  for (const auto& po : assembly.objects()) {
    if (po.fixed) continue;
    for (const auto& v : po.world.vertices) pts.push_back(v);
  }
  if (pts.size() < 4) return 0.0;
  Vec3 mean = Vec3::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  Mat3 axes = eig.eigenvectors();
  Vec3 lo(kInf, kInf, kInf), hi(-kInf, -kInf, -kInf);
  for (const auto& p : pts) {
    Vec3 q = axes.transpose() * (p - mean);
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  Vec3 ext = hi - lo;
  return ext.x() * ext.y() * ext.z();
}

}  // namespace placer
