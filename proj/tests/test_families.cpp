#include "holdcert/families.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

using namespace holdcert;

namespace {

bool has_vertex(const Polytope3& k, const Vec3& p) {
  for (const Vec3& v : k.vertices())
    if ((v - p).norm() < 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("octahedron iceberg predictions") {
  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  CHECK(f.body.vertices().size() == 6);
  // Closed form evaluated here independently of the constructor.
  const double phi = std::atan(0.38 / std::sqrt(3.0));
  const double d = 2 * 1.38 * std::cos(phi);
  const double z = -(5 * 1.38 / (2 * std::sqrt(3.0))) * std::sin(2 * phi);
  CHECK(std::abs(f.predicted.at("d").scalar() - d) < 1e-12);
  CHECK(std::abs(f.predicted.at("circle_center").value[2] - z) < 1e-12);
  CHECK(std::abs(d - 2.69588) < 1e-5);
  CHECK(std::abs(z - (-0.833863)) < 1e-6);
  // Cross-check: the circle is the enclosing circle of its slice.
  const Circle3 s = slice_circle(f.body, {Vec3::UnitZ(), z});
  CHECK(std::abs(s.diameter - d) < 1e-9);
  CHECK((s.center - Vec3(0, 0, z)).norm() < 1e-9);

  const FamilyInstance g = octahedron_iceberg(1.01, 200);
  CHECK(std::abs(g.predicted.at("d").scalar() - 2.01997) < 1e-5);
  const double w = width3(g.body).width;
  CHECK(w > 2.99);
  CHECK(w < 3.0);
  CHECK(g.predicted.at("d").scalar() / w > 2.0 / 3.0);
  CHECK(g.predicted.at("d").scalar() / w < 0.675);
  CHECK_THROWS_AS(octahedron_iceberg(1.0, 5), GeometryError);
  CHECK_THROWS_AS(octahedron_iceberg(1.2, -5), GeometryError);
}

TEST_CASE("property: d/w decreases toward 2/3 along a -> 1, h -> infinity") {
  double last = 1e9;
  for (const auto& [a, h] : std::vector<std::pair<double, double>>{{1.4, 4}, {1.2, 10}, {1.1, 25}, {1.05, 50}, {1.02, 100}, {1.01, 200}, {1.005, 400}}) {
    const FamilyInstance f = octahedron_iceberg(a, h);
    const double ratio = f.predicted.at("d").scalar() / width3(f.body).width;
    CHECK(ratio > 2.0 / 3.0);
    CHECK(ratio < last);
    last = ratio;
  }
  double d_prev = 1e9;
  for (double a : {1.5, 1.1, 1.01, 1.001, 1.0001}) {
    const double d = octahedron_iceberg(a, 5).predicted.at("d").scalar();
    CHECK(d < d_prev);
    CHECK(d > 2.0);
    d_prev = d;
  }
  CHECK(d_prev - 2.0 < 1e-3);
}

TEST_CASE("seven-vertex iceberg") {
  const FamilyInstance f = seven_vertex_iceberg(1.38, 5);
  CHECK(f.body.vertices().size() == 7);
  CHECK(has_vertex(f.body, Vec3(0, 0, 1)));
  CHECK(f.predicted.at("delta_upper").scalar() == doctest::Approx(2.76));
  HoldingSearchOptions o;
  o.estimate_delta = true;
  const HoldingSearchResult r = min_holding_circle(f.body, o);
  REQUIRE(r.delta_estimate);
  CHECK(*r.delta_estimate >= r.circle.diameter);
  // The basin around the horizontal circle stays below 2a. Circles across
  // the bottom edges hold too and grow past it, so the overall estimate does not.
  bool seen = false;
  for (const HoldingCandidate& c : r.candidates) {
    if (!c.certified || std::abs(c.circle.normal.z()) < 0.999) continue;
    seen = true;
    CHECK(c.grown_diameter >= c.circle.diameter);
    CHECK(c.grown_diameter < 2.0 * 1.38);
  }
  CHECK(seen);
}

TEST_CASE("rectangle circle construction") {
  const RectangleCircle r = rectangle_circle_solve(1.38, 5);
  CHECK(r.alpha > 0.0);
  CHECK(r.alpha < 1.0);
  CHECK(r.beta > 0.0);
  CHECK(r.beta < 1.0);
  CHECK(std::abs(r.residual_im) < 1e-10);
  CHECK(std::abs(r.residual_arg) < 1e-10);
  // Recompute the two constraints from the returned points.
  CHECK(std::abs(r.A.y() - r.B_prime.y()) < 1e-10);
  const double arg = std::arg(std::complex<double>(r.A.x() - r.B.x(), r.A.y() - r.B.y()));
  CHECK(std::abs(std::remainder(arg - M_PI / 3, M_PI)) < 1e-10);
  CHECK((r.A - r.B).norm() == doctest::Approx((r.A_prime - r.B_prime).norm()).epsilon(1e-12));
  for (const Vec3& p : {r.A, r.A_prime, r.B, r.B_prime}) {
    CHECK((p - r.circle.center).norm() == doctest::Approx(r.circle.radius()).epsilon(1e-9));
  }
  const RectangleCircle near = rectangle_circle_solve(1.05, 50);
  CHECK(near.circle.diameter > 2 * 1.05);
}

TEST_CASE("flat tetrahedron predictions") {
  const FamilyInstance f = flat_tetrahedron(0.2);
  CHECK(f.predicted.at("d").scalar() == doctest::Approx(0.392232).epsilon(1e-6));
  CHECK(f.circle->center.z() == doctest::Approx(0.0384615).epsilon(1e-6));
  CHECK(f.predicted.at("D").scalar() == doctest::Approx(1.04));
  double ratio_prev = 1e9;
  for (double eps : {0.4, 0.2, 0.1, 0.05, 0.01}) {
    const FamilyInstance g = flat_tetrahedron(eps);
    const double ratio = g.predicted.at("d").scalar() / min_cylinder(g.body).diameter;
    CHECK(ratio < ratio_prev);
    ratio_prev = ratio;
  }
  CHECK(ratio_prev < 0.03);
}

TEST_CASE("five-vertex flat body") {
  const FamilyInstance f = five_vertex_flat(0.2);
  CHECK(f.body.vertices().size() == 5);
  CHECK(has_vertex(f.body, Vec3(0, 0, -0.04)));
  // A large vertical circle around the long axis no longer holds.
  const Circle3 big{Vec3(0, 0, 0.5), 1.2, Vec3::UnitX()};
  CertifyOptions o;
  o.escape.budget = 5000;
  CHECK(certify_holding(f.body, big, o).verdict != Verdict::CertifiedHoldingEvidence);
}

TEST_CASE("skew tetrahedron") {
  const FamilyInstance f = skew_tetrahedron(0.1);
  CHECK(f.body.vertices().size() == 4);
  const auto& x14 = f.predicted.at("crossing_A1A4").value;
  const auto& x23 = f.predicted.at("crossing_A2A3").value;
  CHECK(x14[1] == doctest::Approx(-0.0049751).epsilon(1e-4));
  CHECK(x14[2] == doctest::Approx(0.00049751).epsilon(1e-4));
  CHECK(x23[1] == doctest::Approx(0.0098039).epsilon(1e-4));
  CHECK(x23[2] == doctest::Approx(0.0980392).epsilon(1e-4));
  // The common perpendicular of A1A3 and A2A4 is the z axis.
  const double a = 0.01;
  Vec3 p, q;
  segment_distance({-2, -1, 0.1}, {2 * a, a, 0.1}, {-1, 0, 0}, {a, 0, 0}, &p, &q);
  CHECK(std::hypot(p.x(), p.y()) < 1e-12);
  CHECK(std::hypot(q.x(), q.y()) < 1e-12);
  CHECK_THROWS_AS(skew_tetrahedron(1.5), GeometryError);

  const FamilyInstance g = skew_tetrahedron(0.05);
  const HoldingSearchResult r = min_holding_circle(g.body);
  CHECK(r.report.verdict == Verdict::CertifiedHoldingEvidence);
  CHECK(r.circle.diameter == doctest::Approx(0.05).epsilon(2e-2));
  // d tracks eps while the enclosing cylinder stays put.
  CHECK(r.circle.diameter / min_cylinder(g.body).diameter < 0.12);
}

TEST_CASE("bevelled cylinder") {
  const FamilyInstance f = bevelled_cylinder(10, 64);
  CHECK(f.body.vertices().size() <= 4 + 128);
  CHECK(f.body.vertices().size() >= 4);
  CertifyOptions o;
  o.escape.budget = 20000;
  const HoldingReport r = certify_holding(f.body, *f.circle, o);
  CHECK(r.non_penetration);
  CHECK(r.blocked_above);
  CHECK(r.blocked_below);
  CHECK(f.predicted.at("d").scalar() / f.predicted.at("D").scalar() == doctest::Approx(10.0));
  CHECK_THROWS_AS(bevelled_cylinder(1.5, 64), GeometryError);
  CHECK_THROWS_AS(bevelled_cylinder(10, 8), GeometryError);
}

TEST_CASE("width-equals-diameter tetrahedra") {
  const FamilyInstance f = wd_tetrahedron(2, 2, 1);
  CHECK(f.body.vertices().size() == 4);
  // Projection to the circle plane is a rhombus whose incircle is the circle.
  std::vector<Vec2> top;
  for (const Vec3& v : f.body.vertices()) top.emplace_back(v.x(), v.y());
  const Polygon2 rhombus = Polygon2::hull(top);
  CHECK(rhombus.size() == 4);
  CHECK(chebyshev_inscribed(rhombus).radius == doctest::Approx(f.circle->radius()).epsilon(1e-9));
}

TEST_CASE("simplex hulls in higher dimension") {
  const FamilyInstanceND f = simplex_hull_nd(3, 1.2, 5);
  const FamilyInstance g = octahedron_iceberg(1.2, 5);
  CHECK(f.body.vertices.size() == 6);
  // Same vertex set up to a rotation about the vertical axis: compare sorted distance profiles.
  std::multiset<long> df, dg;
  for (const auto& a : f.body.vertices)
    for (const auto& b : f.body.vertices) df.insert(std::lround(1e6 * (a - b).norm()));
  for (const Vec3& a : g.body.vertices())
    for (const Vec3& b : g.body.vertices()) dg.insert(std::lround(1e6 * (a - b).norm()));
  CHECK(df == dg);

  const FamilyInstanceND h = simplex_hull_nd(4, 1.001, 1000);
  CHECK(h.body.vertices.size() == 8);
  CHECK(h.predicted.at("side").scalar() == doctest::Approx(1.001 * std::sqrt(8.0 / 3.0)));
  const double side = (h.body.vertices[0] - h.body.vertices[1]).norm();
  CHECK(side == doctest::Approx(h.predicted.at("side").scalar()).epsilon(1e-12));
  CHECK(std::abs(width_estimate_nd(h.body) - 2.0 * std::sqrt(3.0)) < 0.02 * 2.0 * std::sqrt(3.0));

  const double d5 = simplex_hull_nd(5, 1.001, 1000).predicted.at("sphere_diameter").scalar();
  CHECK(std::abs(d5 - 2.002 * std::pow(1.0 + 1e-6 / 15.0, -0.5)) < 1e-12);
}

TEST_CASE("Steinhagen constants") {
  CHECK(steinhagen_constant(3) == doctest::Approx(2.0 / 3.0));
  CHECK(steinhagen_constant(4) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(steinhagen_constant(5) == doctest::Approx(std::sqrt(6.0) / 5.0));
}

TEST_CASE("property: planar inradius is at least C/2 times the width") {
  Rng rng(83);
  for (int i = 0; i < 500; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 5 + i % 20);
    if (p.size() < 3) continue;
    CHECK(chebyshev_inscribed(p).radius / width2(p).width >= steinhagen_constant(3) / 2.0 - 1e-12);
  }
}

TEST_CASE("sampled widths") {
  PolytopeND cube;
  cube.dimension = 4;
  for (int i = 0; i < 16; ++i) {
    Eigen::VectorXd v(4);
    for (int j = 0; j < 4; ++j) v[j] = (i >> j) & 1;
    cube.vertices.push_back(v);
  }
  const double w = width_estimate_nd(cube);
  CHECK(w <= 1.0 + 1e-6);
  CHECK(w >= 0.99);

  PolytopeND tri;
  tri.dimension = 2;
  for (const auto& v : regular_simplex(2, 1.0)) tri.vertices.push_back(v);
  const double s = (tri.vertices[0] - tri.vertices[1]).norm();
  CHECK(width_estimate_nd(tri) == doctest::Approx(s * std::sqrt(3.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("property: every family passes its own cross-checks") {
  const FamilyInstance flat = flat_tetrahedron(0.2);
  const CylinderResult c = min_cylinder(flat.body);
  CHECK(c.diameter == doctest::Approx(flat.predicted.at("D").scalar()).epsilon(1e-6));
  CHECK(nonintersecting_edge_bound(flat.body).distance == doctest::Approx(flat.predicted.at("d").scalar()).epsilon(1e-12));
  for (const char* name : {"octahedron_iceberg", "flat_tetrahedron", "skew_tetrahedron", "wd_tetrahedron"}) {
    std::map<std::string, double> params{{"a", 1.2}, {"h", 4}, {"eps", 0.2}, {"p", 2}, {"q", 3}, {"s", 1}};
    const FamilyInstance f = make_family(name, params);
    REQUIRE(f.circle);
    const Circle3 s = slice_circle(f.body, {f.circle->normal, f.circle->normal.dot(f.circle->center)});
    CHECK(s.diameter == doctest::Approx(f.circle->diameter).epsilon(1e-9));
    CHECK_FALSE(circle_interior_intersects(*f.circle, f.body).intersects);
  }
  CHECK_THROWS_AS(make_family("dodecahedron", {}), GeometryError);
  CHECK_THROWS_AS(make_family("flat_tetrahedron", {}), GeometryError);
}
