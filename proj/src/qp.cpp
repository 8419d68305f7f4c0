#include "placer/qp.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <vector>

namespace placer {

LeastDistanceResult solve_least_distance(const MatX& C, const VecX& d) {
  const int n = static_cast<int>(C.rows());
  const int m = static_cast<int>(C.cols());
  LeastDistanceResult res;
  res.y = VecX::Zero(n);
  res.multipliers = VecX::Zero(m);
  if (m == 0) {
    res.feasible = true;
    return res;
  }

  const double viol_tol = 1e-11 * std::max(1.0, d.cwiseAbs().maxCoeff());
  const double dep_tol = 1e-12;

  std::vector<int> active;
  std::vector<double> u;  // multipliers of active constraints, nonnegative

  int chosen = -1;
  double u_plus = 0.0;  // multiplier accumulated by the incoming constraint

  const int max_iter = 100 * (m + 1);
  for (int it = 0; it < max_iter; ++it) {
    ++res.iterations;
    if (chosen < 0) {
      double worst = -viol_tol;
      for (int j = 0; j < m; ++j) {
        if (std::find(active.begin(), active.end(), j) != active.end()) continue;
        double v = C.col(j).dot(res.y) - d[j];
        if (v < worst) {
          worst = v;
          chosen = j;
        }
      }
      if (chosen < 0) {
        res.feasible = true;
        for (std::size_t k = 0; k < active.size(); ++k) res.multipliers[active[k]] = u[k];
        return res;
      }
      u_plus = 0.0;
    }

    const VecX cp = C.col(chosen);
    VecX r(0), z = cp;
    MatX N(n, active.size());
    if (!active.empty()) {
      for (std::size_t k = 0; k < active.size(); ++k) N.col(static_cast<long>(k)) = C.col(active[k]);
      r = (N.transpose() * N).ldlt().solve(N.transpose() * cp);
      z = cp - N * r;
    }
    const double zz = z.squaredNorm();
    const double viol = cp.dot(res.y) - d[chosen];

    double t_full = kInf;
    if (zz > dep_tol) t_full = -viol / zz;

    double t_dual = kInf;
    int blocker = -1;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (r[static_cast<long>(k)] > dep_tol) {
        double t = u[k] / r[static_cast<long>(k)];
        if (t < t_dual) {
          t_dual = t;
          blocker = static_cast<int>(k);
        }
      }
    }

    const double t = std::min(t_full, t_dual);
    if (!std::isfinite(t)) return res;  // no primal direction, no dual relief: infeasible

    if (zz > dep_tol) res.y += t * z;
    for (std::size_t k = 0; k < active.size(); ++k) u[k] -= t * r[static_cast<long>(k)];
    u_plus += t;

    if (t_full <= t_dual) {
      active.push_back(chosen);
      u.push_back(u_plus);
      chosen = -1;
    } else {
      active.erase(active.begin() + blocker);
      u.erase(u.begin() + blocker);
    }
  }
  return res;  // iteration cap: report infeasible
}

}  // namespace placer
