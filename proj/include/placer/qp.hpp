#pragma once

#include "placer/core.hpp"

namespace placer {

// Least-distance program: minimize 0.5*||y||^2 subject to C^T y >= d, with one
// column of C per constraint. Solved with a dual active-set method: starting
// from the unconstrained optimum y = 0, the most violated constraint is
// activated, taking primal steps in the null space of the active set and
// dropping constraints whose multipliers would turn negative.
struct LeastDistanceResult {
  bool feasible = false;
  VecX y;
  VecX multipliers;  // size = number of constraints, nonnegative
  int iterations = 0;
};

LeastDistanceResult solve_least_distance(const MatX& C, const VecX& d);

}  // namespace placer
