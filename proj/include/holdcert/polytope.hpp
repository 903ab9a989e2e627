#pragma once

#include "holdcert/core.hpp"
#include "holdcert/planar.hpp"

#include <span>
#include <utility>
#include <vector>

namespace holdcert {

struct Face {
  Vec3 normal;                // outward, unit
  double offset = 0.0;        // normal . p <= offset on the body
  std::vector<int> vertices;  // counterclockwise seen from outside
};

// Bounded convex polytope with a hull-minimal vertex set.
class Polytope3 {
 public:
  Polytope3() = default;

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  double support(const Vec3& u) const;
  double breadth(const Vec3& u) const { return support(u) + support(-u); }
  // Max over faces of n . p - b: negative inside, positive outside.
  double max_face_violation(const Vec3& p) const;
  Vec3 vertex_centroid() const;
  double circumradius() const;  // about the vertex centroid
  double volume() const;

  // p -> rotation * p + translation, face structure preserved.
  Polytope3 transformed(const Mat3& rotation, const Vec3& translation) const;

 private:
  friend Polytope3 build_hull(std::span<const Vec3>, const Tolerances&);
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<std::pair<int, int>> edges_;
};

// Incremental hull followed by coplanar-facet merging. Throws DegenerateInput
// for fewer than four affinely independent points.
Polytope3 build_hull(std::span<const Vec3> points, const Tolerances& tol = {});

inline double support(const Polytope3& k, const Vec3& u) { return k.support(u); }

enum class WidthFeature { FaceVertex, EdgeEdge };

struct WidthResult {
  double width = 0.0;
  Vec3 direction = Vec3::UnitZ();
  WidthFeature feature = WidthFeature::FaceVertex;
  std::pair<int, int> features{-1, -1};  // (face, vertex) or (edge, edge) indices
};

// Exact polytope width: every minimal-breadth direction is a face normal or
// orthogonal to a pair of edges, so both families are enumerated.
WidthResult width3(const Polytope3& k);

// K ∩ hs. Returns K when it already lies in hs; throws EmptyResult when the
// intersection has empty interior.
Polytope3 clip_halfspace(const Polytope3& k, const HalfSpace& hs, const Tolerances& tol = {});

enum class SliceKind { Polygon, Segment, Point };

struct Slice {
  Polygon2 polygon;  // coordinates in `frame`
  PlaneFrame frame;
  SliceKind kind = SliceKind::Polygon;
};

// Cross-section with the plane normal . p = offset. Frame origin is
// offset * normal. Throws EmptyResult when the plane misses K.
Slice slice_plane(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol = {});

struct CylinderResult {
  double diameter = 0.0;
  Vec3 axis_point = Vec3::Zero();  // point of the axis closest to the vertex centroid
  Vec3 axis_direction = Vec3::UnitZ();
};

struct CylinderOptions {
  int subdivision_level = 5;  // 10 * 4^level + 2 icosahedral directions
  int refine_iterations = 400;
};

// Upper bound on the minimal circumscribing cylinder diameter.
CylinderResult min_cylinder(const Polytope3& k, const CylinderOptions& options = {},
                            const Tolerances& tol = {});

// Minimal enclosing circle diameter of the projection along u.
double projected_enclosing_diameter(const Polytope3& k, const Vec3& u);

// Unit vertices of a subdivided icosahedron.
std::vector<Vec3> icosphere_directions(int level);

enum class Location { Interior, Boundary, Exterior };

Location point_location(const Polytope3& k, const Vec3& p, const Tolerances& tol = {});

}  // namespace holdcert
