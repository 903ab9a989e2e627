#pragma once

#include "holdcert/core.hpp"

#include <span>
#include <vector>

namespace holdcert {

// Convex polygon with counterclockwise vertices and no collinear or repeated
// vertices. Two vertices encode a segment, one a point.
class Polygon2 {
 public:
  Polygon2() = default;

  // Convex hull of arbitrary points; collinear points within `tol` are dropped.
  static Polygon2 hull(std::span<const Vec2> points, double tol = 1e-12);
  // Trusts the caller: vertices must already be convex and counterclockwise.
  static Polygon2 from_ccw(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool is_degenerate() const { return vertices_.size() < 3; }

  double area() const;
  Vec2 centroid() const;
  bool contains(const Vec2& p, double tol = 0.0) const;
  double distance_to(const Vec2& p) const;
  // Breadth of the projection onto unit direction u.
  double breadth(const Vec2& u) const;
  // Sutherland-Hodgman clip against {p : normal . p <= offset}.
  Polygon2 clipped(const Vec2& normal, double offset) const;

 private:
  std::vector<Vec2> vertices_;
};

// {(s,t) : a t + b1 <= s <= a t + b2}
struct Strip {
  double slope = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double horizontal_width() const { return b2 - b1; }
};

struct Circle2 {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

struct Width2Result {
  double width = 0.0;
  Vec2 direction = Vec2::UnitY();
  bool degenerate = false;
};

struct HorizontalWidthResult {
  double width = 0.0;
  Strip strip;
};

Width2Result width2(const Polygon2& p);

// Minimal b2 - b1 over non-horizontal strips containing p. The objective
// max(s - a t) - min(s - a t) is convex piecewise linear in a with
// breakpoints at edge slopes, so evaluating those is exact.
HorizontalWidthResult horizontal_width(const Polygon2& p);

struct Lemma1Result {
  double wh_upper = 0.0;         // w_h(P ∩ {t >= 0})
  double wh_lower = 0.0;         // w_h(P ∩ {t <= 0})
  double wh_intersection = 0.0;  // length of P ∩ {t = 0}
  double wh_union = 0.0;         // w_h(P)
  double residual_min = 0.0;
  double residual_max = 0.0;
};

// Splits p along t = 0; throws InvalidInput unless p has vertices strictly on both sides.
Lemma1Result lemma1_identities(const Polygon2& p, double tol = 1e-12);

Circle2 min_enclosing_circle(std::span<const Vec2> points);

// Largest inscribed circle; throws DegenerateInput for segments and points.
Circle2 chebyshev_inscribed(const Polygon2& p);

double hausdorff_distance(const Polygon2& p, const Polygon2& q);

// Convex hull of k uniform points in the disk of radius `radius`.
Polygon2 random_convex_polygon(Rng& rng, int k, double radius = 1.0);

}  // namespace holdcert
