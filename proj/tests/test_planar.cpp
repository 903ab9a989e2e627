#include "holdcert/planar.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace holdcert;

namespace {

Polygon2 poly(std::vector<Vec2> pts) { return Polygon2::hull(pts); }

Polygon2 unit_square() { return poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon2 equilateral_height(double h) {
  const double side = 2.0 * h / std::sqrt(3.0);
  return poly({{-side / 2, 0}, {side / 2, 0}, {0, h}});
}

// Breadth minimized over a fine direction grid; an upper bound on the width.
double sampled_width(const Polygon2& p, int n = 20000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double a = M_PI * i / n;
    best = std::min(best, p.breadth(Vec2(std::cos(a), std::sin(a))));
  }
  return best;
}

// Horizontal width over pairwise-slope breakpoints.
double wh_breakpoints(const Polygon2& p) {
  const auto& v = p.vertices();
  auto f = [&](double k) {
    double lo = 1e300;
    double hi = -1e300;
    for (const Vec2& q : v) {
      lo = std::min(lo, q.x() - k * q.y());
      hi = std::max(hi, q.x() - k * q.y());
    }
    return hi - lo;
  };
  double best = f(0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i].y() != v[j].y()) best = std::min(best, f((v[i].x() - v[j].x()) / (v[i].y() - v[j].y())));
  return best;
}

// Smallest circle through 2 or 3 points that contains everything.
double brute_mec_radius(const std::vector<Vec2>& pts) {
  double best = std::numeric_limits<double>::infinity();
  auto covers = [&](const Vec2& c, double r) {
    return std::all_of(pts.begin(), pts.end(), [&](const Vec2& p) { return (p - c).norm() <= r + 1e-12; });
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec2 c = (pts[i] + pts[j]) / 2.0;
      const double r = (pts[i] - c).norm();
      if (r < best && covers(c, r)) best = r;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const Vec2 a = pts[i], b = pts[j], e = pts[k];
        const double d = 2.0 * (a.x() * (b.y() - e.y()) + b.x() * (e.y() - a.y()) + e.x() * (a.y() - b.y()));
        if (std::abs(d) < 1e-14) continue;
        const Vec2 cc((a.squaredNorm() * (b.y() - e.y()) + b.squaredNorm() * (e.y() - a.y()) + e.squaredNorm() * (a.y() - b.y())) / d,
                      (a.squaredNorm() * (e.x() - b.x()) + b.squaredNorm() * (a.x() - e.x()) + e.squaredNorm() * (b.x() - a.x())) / d);
        const double r = (a - cc).norm();
        if (r < best && covers(cc, r)) best = r;
      }
    }
  }
  return best;
}

double edge_clearance(const Polygon2& p, const Vec2& c) {
  const auto& v = p.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = (v[(i + 1) % v.size()] - v[i]).normalized();
    best = std::min(best, e.x() * (c.y() - v[i].y()) - e.y() * (c.x() - v[i].x()));
  }
  return best;
}

}  // namespace

TEST_CASE("hull is counterclockwise and drops interior points") {
  const Polygon2 p = poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0.0}});
  CHECK(p.size() == 4);
  CHECK(p.area() == doctest::Approx(1.0));
  CHECK(p.contains(Vec2(0.5, 0.5)));
  CHECK_FALSE(p.contains(Vec2(1.5, 0.5)));
}

TEST_CASE("planar width examples") {
  CHECK(width2(equilateral_height(3.0)).width == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(width2(unit_square()).width == doctest::Approx(1.0).epsilon(1e-12));
  const Width2Result seg = width2(poly({{0, 0}, {1, 1}}));
  CHECK(seg.degenerate);
  CHECK(seg.width == 0.0);
}

TEST_CASE("horizontal width examples") {
  const HorizontalWidthResult sq = horizontal_width(unit_square());
  CHECK(sq.width == doctest::Approx(1.0));
  CHECK(std::abs(sq.strip.slope) < 1e-12);
  const HorizontalWidthResult tri = horizontal_width(poly({{0, 0}, {1, 0}, {5, 1}}));
  CHECK(tri.width == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri.strip.slope >= 4.0 - 1e-12);
  CHECK(tri.strip.slope <= 5.0 + 1e-12);
  CHECK(horizontal_width(poly({{0, 0}, {1, 0}, {3, 1}, {2, 1}})).width == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(horizontal_width(poly({{0, 0}, {2, 0}})).width == doctest::Approx(2.0));
  CHECK(horizontal_width(poly({{0, 0}, {1, 1}})).width == doctest::Approx(0.0));
}

TEST_CASE("strip returned by horizontal width contains the polygon") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 5 + i % 25);
    const HorizontalWidthResult r = horizontal_width(p);
    for (const Vec2& v : p.vertices()) {
      const double s = v.x() - r.strip.slope * v.y();
      CHECK(s >= r.strip.b1 - 1e-9);
      CHECK(s <= r.strip.b2 + 1e-9);
    }
    CHECK(r.strip.horizontal_width() == doctest::Approx(r.width));
  }
}

TEST_CASE("residual identities on hand examples") {
  const Lemma1Result sq = lemma1_identities(poly({{0, -0.5}, {1, -0.5}, {1, 0.5}, {0, 0.5}}));
  CHECK(sq.wh_upper == doctest::Approx(1.0));
  CHECK(sq.wh_lower == doctest::Approx(1.0));
  CHECK(sq.wh_intersection == doctest::Approx(1.0));
  CHECK(sq.wh_union == doctest::Approx(1.0));
  CHECK(sq.residual_min < 1e-12);
  CHECK(sq.residual_max < 1e-12);

  const Lemma1Result tri = lemma1_identities(poly({{0, 1}, {-1, -1}, {1, -1}}));
  CHECK(tri.wh_intersection == doctest::Approx(1.0));
  CHECK(tri.wh_intersection == doctest::Approx(std::min(tri.wh_upper, tri.wh_lower)));
  CHECK(tri.wh_union == doctest::Approx(tri.wh_lower));
  CHECK(tri.wh_union == doctest::Approx(std::max(tri.wh_upper, tri.wh_lower)));

  CHECK_THROWS_AS(lemma1_identities(unit_square()), GeometryError);
}

TEST_CASE("minimal enclosing circle examples") {
  const std::vector<Vec2> a{{0.2, 0}, {-0.2, 0}, {0, 1}};
  const Circle2 c = min_enclosing_circle(a);
  CHECK(c.center.x() == doctest::Approx(0.0));
  CHECK(c.center.y() == doctest::Approx(0.48));
  CHECK(c.radius == doctest::Approx(0.52));
  const std::vector<Vec2> two{{-1, 3}, {1, 3}};
  const Circle2 t = min_enclosing_circle(two);
  CHECK(t.radius == doctest::Approx(1.0));
  CHECK((t.center - Vec2(0, 3)).norm() < 1e-12);
  std::vector<Vec2> tri;
  for (int k = 0; k < 3; ++k) tri.emplace_back(1.38 * std::cos(2 * M_PI * k / 3), 1.38 * std::sin(2 * M_PI * k / 3));
  CHECK(min_enclosing_circle(tri).radius == doctest::Approx(1.38).epsilon(1e-12));
}

TEST_CASE("inscribed circle examples") {
  CHECK(chebyshev_inscribed(equilateral_height(3.0)).radius == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(chebyshev_inscribed(unit_square()).radius == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(chebyshev_inscribed(poly({{0, 0}, {1, 1}})), GeometryError);
}

TEST_CASE("Hausdorff distance examples") {
  const Polygon2 sq = unit_square();
  CHECK(hausdorff_distance(sq, sq) == doctest::Approx(0.0));
  const Polygon2 big = poly({{-0.1, -0.1}, {1.1, -0.1}, {1.1, 1.1}, {-0.1, 1.1}});
  CHECK(hausdorff_distance(sq, big) == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hausdorff_distance(big, sq) == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("property: width matches a sampled oracle and never exceeds horizontal width") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 5 + i % 26);
    if (p.size() < 3) continue;
    const double w = width2(p).width;
    if (i < 100) {
      const double s = sampled_width(p);
      CHECK(w <= s + 1e-12);
      CHECK(w >= s - 5e-4);  // sampling step error
    }
    const double wh = horizontal_width(p).width;
    CHECK(w <= wh + 1e-12);
    CHECK(wh == doctest::Approx(wh_breakpoints(p)).epsilon(1e-12));
  }
}

TEST_CASE("property: horizontal width is shear invariant, width is not") {
  Rng rng(23);
  bool width_changed = false;
  for (int i = 0; i < 200; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 8);
    const double lambda = rng.uniform(-3.0, 3.0);
    std::vector<Vec2> sheared;
    for (const Vec2& v : p.vertices()) sheared.emplace_back(v.x() + lambda * v.y(), v.y());
    const Polygon2 q = Polygon2::hull(sheared);
    CHECK(horizontal_width(q).width == doctest::Approx(horizontal_width(p).width).epsilon(1e-10));
    width_changed = width_changed || std::abs(width2(q).width - width2(p).width) > 1e-3;
  }
  CHECK(width_changed);
}

TEST_CASE("property: enclosing circle is tight and matches the brute-force oracle") {
  Rng rng(29);
  for (int i = 0; i < 300; ++i) {
    std::vector<Vec2> pts;
    const int n = 2 + i % 12;
    for (int k = 0; k < n; ++k) pts.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Circle2 c = min_enclosing_circle(pts);
    double far = 0.0;
    for (const Vec2& p : pts) far = std::max(far, (p - c.center).norm());
    CHECK(far <= c.radius + 1e-12);
    CHECK(far > c.radius - 1e-6);
    CHECK(c.radius == doctest::Approx(brute_mec_radius(pts)).epsilon(1e-9));
  }
}

TEST_CASE("property: inscribed circle is inside, tight, and bounds the width") {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 5 + i % 26);
    if (p.size() < 3) continue;
    const Circle2 c = chebyshev_inscribed(p);
    const double clearance = edge_clearance(p, c.center);
    CHECK(clearance >= c.radius - 1e-12);
    CHECK(clearance < c.radius + 1e-6);
    CHECK(width2(p).width <= 3.0 * c.radius + 1e-9);
  }
}

TEST_CASE("property: residual identities on random axis-crossing polygons") {
  Rng rng(37);
  int tested = 0;
  while (tested < 1000) {
    const Polygon2 p = random_convex_polygon(rng, 5 + tested % 26);
    double lo = 1e300;
    double hi = -1e300;
    for (const Vec2& v : p.vertices()) {
      lo = std::min(lo, v.y());
      hi = std::max(hi, v.y());
    }
    if (p.size() < 3 || lo > -1e-6 || hi < 1e-6) continue;
    ++tested;
    const Lemma1Result r = lemma1_identities(p);
    CHECK(r.residual_min < 1e-9);
    CHECK(r.residual_max < 1e-9);
  }
}
