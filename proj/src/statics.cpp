#include "placer/statics.hpp"

#include <Eigen/QR>

#include <cmath>

#include "placer/qp.hpp"

namespace placer {

namespace {

ForceSolution make_solution(const EquilibriumSystem& sys, const VecX& f) {
  ForceSolution sol;
  const int nc = static_cast<int>(sys.contacts.size());
  sol.force_world.resize(nc);
  sol.force_local.resize(nc);
  for (int i = 0; i < nc; ++i) {
    Vec3 fw = f.segment<3>(3 * i);
    sol.force_world[i] = fw;
    Vec3 fl = sys.contacts[i].to_local(fw);
    sol.force_local[i] = fl;
    sol.max_tension = std::max(sol.max_tension, -fl.z());
    sol.friction_violation =
        std::max(sol.friction_violation, std::abs(fl.x()) + std::abs(fl.y()) - sys.contacts[i].mu * fl.z());
  }
  sol.max_tension = std::max(sol.max_tension, 0.0);
  sol.friction_violation = std::max(sol.friction_violation, 0.0);
  sol.residual = (sys.A * f - sys.b).norm();
  sol.objective = 0.5 * f.squaredNorm();
  return sol;
}

// Minimal-norm particular solution plus an orthonormal null-space basis of A,
// both from one rank-revealing QR of A^T.
struct QrSplit {
  bool consistent = false;
  VecX f0;
  MatX null_basis;  // 3I x (3I - rank)
};

QrSplit qr_split(const EquilibriumSystem& sys) {
  QrSplit out;
  const int cols = static_cast<int>(sys.A.cols());
  if (sys.A.rows() == 0) {
    out.consistent = true;
    out.f0 = VecX::Zero(cols);
    out.null_basis = MatX::Identity(cols, cols);
    return out;
  }
  Eigen::ColPivHouseholderQR<MatX> qr(sys.A.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  MatX Q = qr.householderQ() * MatX::Identity(cols, cols);
  MatX R = qr.matrixR().topRows(rank).template triangularView<Eigen::Upper>();
  VecX pb = qr.colsPermutation().transpose() * sys.b;
  VecX z = R.topLeftCorner(rank, rank).transpose().triangularView<Eigen::Lower>().solve(pb.head(rank));
  out.f0 = Q.leftCols(rank) * z;
  out.null_basis = Q.rightCols(cols - rank);
  double residual = (sys.A * out.f0 - sys.b).norm();
  out.consistent = residual <= 1e-6 * sys.weight_scale;
  return out;
}

}  // namespace

std::optional<EquilibriumSystem> build_equilibrium_system(const std::vector<BodyState>& bodies,
                                                          std::vector<ContactPoint> contacts,
                                                          const Vec3& gravity) {
  EquilibriumSystem sys;
  sys.contacts = std::move(contacts);
  int blocks = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (!bodies[i].fixed) sys.block_of_body[static_cast<int>(i)] = blocks++;

  const int nc = static_cast<int>(sys.contacts.size());
  sys.A = MatX::Zero(6 * blocks, 3 * nc);
  sys.b = VecX::Zero(6 * blocks);

  std::vector<int> contact_count(bodies.size(), 0);
  for (const auto& c : sys.contacts) {
    if (c.supported >= 0) ++contact_count[c.supported];
    if (c.supporting >= 0) ++contact_count[c.supporting];
  }

  double weight = 0.0;
  for (const auto& [body, blk] : sys.block_of_body) {
    const BodyState& s = bodies[body];
    if (contact_count[body] == 0) return std::nullopt;  // unsupported
    Vec3 w = s.mass * gravity;
    sys.b.segment<3>(6 * blk) = -w;
    sys.b.segment<3>(6 * blk + 3) = -s.com.cross(w);
    weight += w.norm();
  }
  sys.weight_scale = std::max(weight, 1e-9);

  for (int i = 0; i < nc; ++i) {
    const ContactPoint& c = sys.contacts[i];
    Mat3 torque = skew(c.position);
    auto add_block = [&](int body, double sign) {
      auto it = sys.block_of_body.find(body);
      if (it == sys.block_of_body.end()) return;  // fixed bodies carry no rows
      int blk = it->second;
      sys.A.block<3, 3>(6 * blk, 3 * i) += sign * Mat3::Identity();
      sys.A.block<3, 3>(6 * blk + 3, 3 * i) += sign * torque;
    };
    add_block(c.supported, 1.0);
    add_block(c.supporting, -1.0);
  }
  return sys;
}

std::optional<ForceSolution> solve_reaction_forces_qr(const EquilibriumSystem& sys) {
  QrSplit split = qr_split(sys);
  if (!split.consistent) return std::nullopt;
  return make_solution(sys, split.f0);
}

std::optional<ForceSolution> solve_reaction_forces_qp(const EquilibriumSystem& sys) {
  QrSplit split = qr_split(sys);
  if (!split.consistent) return std::nullopt;

  const int nc = static_cast<int>(sys.contacts.size());
  // Five inequality rows per contact: non-tension plus the four pyramid sides.
  MatX G = MatX::Zero(5 * nc, 3 * nc);
  for (int i = 0; i < nc; ++i) {
    const ContactPoint& c = sys.contacts[i];
    G.block<1, 3>(5 * i, 3 * i) = c.normal.transpose();
    int r = 1;
    for (double su : {-1.0, 1.0})
      for (double sv : {-1.0, 1.0}) {
        Vec3 row = c.mu * c.normal - su * c.u - sv * c.v;
        G.block<1, 3>(5 * i + r, 3 * i) = row.transpose();
        ++r;
      }
  }

  VecX slack = G * split.f0;
  if (split.null_basis.cols() == 0) {
    if (nc > 0 && slack.minCoeff() < -1e-9) return std::nullopt;
    return make_solution(sys, split.f0);
  }

  MatX C = (G * split.null_basis).transpose();
  LeastDistanceResult lsd = solve_least_distance(C, -slack);
  if (!lsd.feasible) return std::nullopt;
  VecX f = split.f0 + split.null_basis * lsd.y;
  return make_solution(sys, f);
}

double max_tension(const ForceSolution& sol) { return sol.max_tension; }

bool check_equilibrium(const ForceSolution& sol, double tolerance) {
  return sol.residual <= tolerance && sol.max_tension <= tolerance && sol.friction_violation <= tolerance;
}

}  // namespace placer
