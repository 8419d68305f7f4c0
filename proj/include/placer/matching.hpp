#pragma once

#include <optional>
#include <vector>

#include "placer/mesh.hpp"

namespace placer {

// Scene-side contact candidate: a surface point with outward face normal.
struct SceneContactSample {
  Vec3 position{0, 0, 0};
  Vec3 normal{0, 0, 1};
  int owner = -1;
  int face = -1;
};

enum class PairKind {
  FaceFaceCoplanar,
  FaceFaceIntersecting,
  FaceEdgeIntersecting,
  FaceEdgeParallel,
  EdgeEdgeParallel,
  EdgeEdgeIntersecting,
  EdgeEdgeSkew,
};

struct FeatureRef {
  bool is_edge = false;
  int index = -1;
};

struct FeaturePair {
  PairKind kind{};
  FeatureRef f1, f2;  // f1 realizes sample a, f2 realizes sample b
};

// Object points selected on the pair's feature supports. `clamped` marks the
// parallel edge-edge fallback where the requested separation is unreachable.
struct MatchedPoints {
  Vec3 q{0, 0, 0};
  Vec3 r{0, 0, 0};
  bool clamped = false;
};

Mat3 relative_scene_rotation(const Vec3& n_a, const Vec3& n_b);

// Face affordance: the face normal must oppose the required direction within
// the angular tolerance.
bool face_affords_face(const Vec3& face_normal, const Vec3& required);

// Edge affordance: the tested direction must be orthogonal to the edge and
// lie between the side vectors (sign test on the edge axis).
bool face_affords_edge(const Vec3& normal, const FeatureEdge& edge);

// Ordered feature pairs of the object that can realize the two sampled scene
// normals, classified into the seven geometric subcases. Pairing feasibility
// reduces to the relative angle of the normals; edges contribute the angular
// range spanned by their side-vector fan.
std::vector<FeaturePair> enumerate_feature_pairs(const PolyMesh& mesh, const SceneContactSample& a,
                                                 const SceneContactSample& b, double L);

// Point constructions on the unbounded feature supports. Points land at
// separation L with the connecting line as close to the com as each case
// permits; membership in the bounded face/edge is left to contact resolution.
std::optional<MatchedPoints> match_face_face_coplanar(const PolyMesh& mesh, const Plane& plane,
                                                      const Vec3& com, double L);
std::optional<MatchedPoints> match_face_face_intersecting(const Plane& p1, const Plane& p2, const Vec3& com,
                                                          double L);
std::optional<MatchedPoints> match_face_edge(const Plane& face, const Line& edge, const Vec3& com, double L,
                                             bool intersecting);
std::optional<MatchedPoints> match_edge_edge(const Line& e1, const Line& e2, const Vec3& com, double L,
                                             PairKind subcase);

// Dispatch on the pair kind against the mesh's features.
std::optional<MatchedPoints> match_feature_pair(const PolyMesh& mesh, const Vec3& com,
                                                const FeaturePair& pair, double L);

// Representative outward normal of a feature (face normal / edge average).
Vec3 feature_normal(const PolyMesh& mesh, const FeatureRef& ref);

}  // namespace placer
