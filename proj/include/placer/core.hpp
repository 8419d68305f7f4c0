#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace placer {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Quat = Eigen::Quaterniond;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Central tolerances. Geometry generators emit exact coordinates, so these
// mostly guard against floating-point noise and tessellated curved surfaces.
namespace tol {
constexpr double kUnit = 1e-9;             // unit-vector / orthonormality slack
constexpr double kParallelSin = 1e-8;      // sine of angle below which lines/planes are parallel
constexpr double kMergePlane = 1e-6;       // plane residual for coplanar face merging (m)
constexpr double kMergeAngleDeg = 0.5;     // normal deviation for face merging
constexpr double kAffordAngleDeg = 1.0;    // angular slack for feature affordance
constexpr double kPenetration = 1e-4;      // allowed interpenetration depth (m)
constexpr double kContact = 1e-4;          // plane gap treated as touching (m)
constexpr double kQpKkt = 1e-8;            // QP termination on KKT residual
}  // namespace tol

inline bool nearly_unit(const Vec3& v, double eps = tol::kUnit) {
  return std::abs(v.norm() - 1.0) <= eps;
}

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

// splitmix64; used wherever deterministic, seed-free jitter is needed.
inline std::uint64_t hash_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline double hash_unit(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = hash_mix(a ^ hash_mix(b ^ hash_mix(c)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Deterministic RNG with portable helpers. std::uniform_* distributions are
// implementation-defined, so draws are derived from raw 64-bit outputs only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(hash_mix(seed + 0x1234abcdull)) {}

  std::uint64_t next_u64() {
    state_ = hash_mix(state_);
    return state_;
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Index in [0, n)
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // Draw from a normalized discrete distribution by CDF inversion.
  std::size_t discrete(const std::vector<double>& probs) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u <= acc) return i;
    }
    return probs.size() - 1;
  }

  Rng split(std::uint64_t stream) const { return Rng(hash_mix(state_ ^ hash_mix(stream))); }

 private:
  std::uint64_t state_;
};

}  // namespace placer
