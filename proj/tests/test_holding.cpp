#include "holdcert/families.hpp"
#include "holdcert/holding.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace holdcert;

namespace {

Polytope3 box(double lo, double hi) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back(i & 1 ? hi : lo, i & 2 ? hi : lo, i & 4 ? hi : lo);
  return build_hull(pts);
}

// Deepest face slack over 10^4 points of the circle; negative means inside.
double sampled_depth(const Circle3& c, const Polytope3& k) {
  double deepest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 10000; ++j) deepest = std::min(deepest, k.max_face_violation(c.point(2.0 * M_PI * j / 10000)));
  return deepest;
}

double brute_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  double best = std::numeric_limits<double>::infinity();
  constexpr int n = 400;
  for (int i = 0; i <= n; ++i) {
    const Vec3 p = a0 + (a1 - a0) * (double(i) / n);
    // Exact distance from p to segment b.
    const Vec3 d = b1 - b0;
    const double t = std::clamp((p - b0).dot(d) / d.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (p - (b0 + t * d)).norm());
  }
  return best;
}

}  // namespace

TEST_CASE("penetration examples") {
  const Polytope3 cube = box(-1, 1);
  CHECK_FALSE(circle_interior_intersects({Vec3(0, 0, 0.5), 4.0, Vec3::UnitZ()}, cube).intersects);
  const PenetrationResult in = circle_interior_intersects({Vec3(0, 0, 0.5), 1.0, Vec3::UnitZ()}, cube);
  CHECK(in.intersects);
  REQUIRE(in.witness);
  CHECK(cube.max_face_violation(*in.witness) < 0.0);

  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  CHECK_FALSE(circle_interior_intersects(*f.circle, f.body).intersects);
  CHECK(sampled_depth(*f.circle, f.body) >= -1e-12);
}

TEST_CASE("property: penetration agrees with the sampling oracle") {
  Rng rng(71);
  int compared = 0;
  while (compared < 1000) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rng.unit_vector() * rng.uniform(0.2, 1.0));
    const Polytope3 k = build_hull(pts);
    const Circle3 c{Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.1, 3.0), rng.unit_vector()};
    const double depth = sampled_depth(c, k);
    if (std::abs(depth) < 2.0 * c.radius() * M_PI / 10000) continue;  // within the oracle's resolution
    ++compared;
    CHECK(circle_interior_intersects(c, k).intersects == (depth < 0.0));
  }
}

TEST_CASE("slice circle profiles") {
  const FamilyInstance f = flat_tetrahedron(0.2);
  const double z = f.circle->center.z();
  const Polytope3 lower = clip_halfspace(f.body, {Vec3::UnitZ(), z});
  const SliceCircumProfile below = slice_circum_profile(lower, Vec3::UnitZ(), 50);
  REQUIRE(!below.records.empty());
  CHECK(below.records.front().height == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(below.records.front().diameter == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(below.records.front().diameter > f.circle->diameter);
  for (std::size_t i = 1; i < below.records.size(); ++i) CHECK(below.records[i].height > below.records[i - 1].height);

  const Polytope3 upper = clip_halfspace(f.body, {-Vec3::UnitZ(), -z});
  const SliceCircumProfile above = slice_circum_profile(upper, Vec3::UnitZ(), 50);
  CHECK(above.records.back().diameter == doctest::Approx(2.0).epsilon(1e-9));

  const Polytope3 top = clip_halfspace(box(0, 1), {-Vec3::UnitZ(), -0.5});
  for (const SliceRecord& r : slice_circum_profile(top, Vec3::UnitZ(), 20).records) {
    CHECK(r.diameter == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("translation block certificates") {
  for (const FamilyInstance& f : {flat_tetrahedron(0.2), octahedron_iceberg(1.38, 5)}) {
    const BlockCertificate b = translation_block_certificate(f.body, *f.circle);
    CHECK(b.blocked_above);
    CHECK(b.blocked_below);
  }
  const BlockCertificate free = translation_block_certificate(box(-1, 1), {Vec3::Zero(), 10.0, Vec3::UnitZ()});
  CHECK_FALSE(free.blocked_above);
  CHECK_FALSE(free.blocked_below);
}

TEST_CASE("edge distance lower bound") {
  const EdgeBound flat = nonintersecting_edge_bound(flat_tetrahedron(0.2).body);
  CHECK(flat.distance == doctest::Approx(2.0 * std::sin(std::atan(0.2))).epsilon(1e-12));
  CHECK(nonintersecting_edge_bound(wd_tetrahedron(2, 2, 1).body).distance == doctest::Approx(1.0));
  CHECK(nonintersecting_edge_bound(box(0, 1)).distance == doctest::Approx(1.0));
}

TEST_CASE("property: segment distance matches dense sampling") {
  Rng rng(73);
  for (int i = 0; i < 300; ++i) {
    const Vec3 a0 = rng.unit_vector(), a1 = rng.unit_vector() * 2.0, b0 = rng.unit_vector(), b1 = rng.unit_vector() * 1.5;
    Vec3 pa, pb;
    const double d = segment_distance(a0, a1, b0, b1, &pa, &pb);
    CHECK((pa - pb).norm() == doctest::Approx(d).epsilon(1e-12));
    CHECK(d <= brute_segment_distance(a0, a1, b0, b1) + 1e-12);
    CHECK(d >= brute_segment_distance(a0, a1, b0, b1) - 0.01);
  }
}

TEST_CASE("escape search finds trivial escapes and validates its path") {
  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  const Circle3 hover{Vec3(0, 0, 2), 1.0, Vec3::UnitZ()};
  EscapeOptions o;
  o.budget = 2000;
  const EscapeResult e = escape_search(f.body, hover, o);
  REQUIRE(e.found());
  CHECK(e.poses_used < 2000);
  CHECK(validate_escape_path(f.body, hover.diameter, *e.path, e.step));
  CHECK((e.path->poses.back().center - f.body.vertex_centroid()).norm() >= e.escape_radius - 1e-9);

  const Polytope3 cube = box(-1, 1);
  const EscapeResult ring = escape_search(cube, {Vec3::Zero(), 10.0, Vec3::UnitZ()}, o);
  REQUIRE(ring.found());
  CHECK(validate_escape_path(cube, 10.0, *ring.path, ring.step));
}

TEST_CASE("escape search is deterministic and rejects bad starts") {
  const Polytope3 cube = box(-1, 1);
  EscapeOptions o;
  o.budget = 500;
  o.seed = 9;
  const Circle3 c{Vec3(0, 0, 3), 1.0, Vec3(1, 1, 0).normalized()};
  const EscapeResult a = escape_search(cube, c, o);
  const EscapeResult b = escape_search(cube, c, o);
  CHECK(a.poses_used == b.poses_used);
  CHECK(a.tree_size == b.tree_size);
  CHECK_THROWS_AS(escape_search(cube, {Vec3::Zero(), 1.0, Vec3::UnitZ()}, o), GeometryError);
  CHECK_THROWS_AS(escape_search(cube, {Vec3(0, 0, 3), 0.0, Vec3::UnitZ()}, o), GeometryError);
}

TEST_CASE("flat tetrahedron circle does not escape within the budget") {
  const FamilyInstance f = flat_tetrahedron(0.2);
  const EscapeResult e = escape_search(f.body, *f.circle, EscapeOptions{});
  CHECK_FALSE(e.found());
  CHECK(e.poses_used == 100000);
}

TEST_CASE("holding reports") {
  const FamilyInstance f = octahedron_iceberg(1.38, 5);
  CertifyOptions o;
  o.escape.budget = 20000;
  const HoldingReport r = certify_holding(f.body, *f.circle, o);
  CHECK(r.non_penetration);
  CHECK(r.verdict == Verdict::CertifiedHoldingEvidence);
  CHECK(r.edge_lower_bound <= f.circle->diameter);

  const HoldingReport loose = certify_holding(box(-1, 1), {Vec3(0, 0, 0.5), 10.0, Vec3::UnitZ()}, o);
  CHECK(loose.verdict == Verdict::EscapeFound);
  REQUIRE(loose.escape);
  CHECK(loose.escape->found());
}

TEST_CASE("chain certificate on octahedron icebergs") {
  const FamilyInstance near_limit = octahedron_iceberg(1.01, 200);
  const ChainCertificate c = chain_certificate(near_limit.body, *near_limit.circle);
  CHECK(c.all_hold());
  CHECK(std::abs(c.min_wh_section_projection - c.section_width) < 1e-6);
  CHECK(c.contact_residual < 1e-9);
  CHECK(c.homothety_ratio > 0.0);
  CHECK(c.homothety_ratio < 1.0);
  CHECK(c.section_inradius >= c.diameter / 2.0 - 1e-9);
  CHECK(c.contacts.size() >= 3);
  // The circle center is an inscribed center of the section.
  double clearance = std::numeric_limits<double>::infinity();
  for (const Vec2& n : c.halfplane_normals) clearance = std::min(clearance, c.diameter / 2.0 - n.dot(Vec2::Zero()));
  CHECK(clearance == doctest::Approx(c.diameter / 2.0));

  const FamilyInstance loose = octahedron_iceberg(1.38, 5);
  const ChainCertificate d = chain_certificate(loose.body, *loose.circle);
  CHECK(d.all_hold());
  // The section here is an equilateral triangle, so equality holds.
  CHECK(d.three_halves_d - d.section_width >= -1e-9);
  CHECK(d.section_width - d.width > c.section_width - c.width);
}

TEST_CASE("chain certificate with two antipodal contacts is a strip") {
  // Upper slices are rhombi elongated along x, so their enclosing circles
  // touch only the two x-extreme vertices.
  const std::vector<Vec3> pts{{3, 0, 1}, {-3, 0, 1}, {0, 1, 1}, {0, -1, 1}, {2, 0, -1}, {-2, 0, -1}, {0, 0.2, -1}, {0, -0.2, -1}};
  const Polytope3 k = build_hull(pts);
  const Circle3 c = slice_circle(k, {Vec3::UnitZ(), 0.0});
  const ChainCertificate ch = chain_certificate(k, c);
  CHECK(ch.strip);
  CHECK(ch.contacts.size() == 2);
  CHECK(ch.section_width == doctest::Approx(c.diameter).epsilon(1e-9));
}

TEST_CASE("chain certificate needs a wider slice above") {
  const Polytope3 cube = box(-1, 1);
  CHECK_THROWS_AS(chain_certificate(cube, slice_circle(cube, {Vec3::UnitZ(), 0.0})), GeometryError);
}

TEST_CASE("extremality diagnostics") {
  const ExtremalityDiagnostics e = extremality_diagnostics(octahedron_iceberg(1.01, 200).body, *octahedron_iceberg(1.01, 200).circle);
  CHECK(e.hausdorff < 0.05);
  const ExtremalityDiagnostics loose = extremality_diagnostics(octahedron_iceberg(1.38, 5).body, *octahedron_iceberg(1.38, 5).circle);
  CHECK(loose.cluster_distance > e.cluster_distance);
  CHECK(loose.gap > e.gap);

  const double side = 2.0 * std::sqrt(3.0);
  const std::vector<Vec2> tri{{-side / 2, -1}, {side / 2, -1}, {0, 2}};
  const TriangleFit fit = fit_equilateral_triangle(Polygon2::hull(tri), 3.0);
  CHECK(fit.hausdorff < 1e-9);
}

TEST_CASE("minimal holding circle examples") {
  const FamilyInstance flat = flat_tetrahedron(0.2);
  const HoldingSearchResult a = min_holding_circle(flat.body);
  CHECK(a.circle.diameter == doctest::Approx(0.392232).epsilon(1e-3));
  CHECK((a.circle.center - Vec3(0, 0, 0.03846)).norm() < 1e-3);

  const FamilyInstance oct = octahedron_iceberg(1.38, 5);
  const HoldingSearchResult b = min_holding_circle(oct.body);
  CHECK(std::abs(b.circle.diameter - 2.6959) < 1e-3);

  const FamilyInstance skew = skew_tetrahedron(0.1);
  const HoldingSearchResult c = min_holding_circle(skew.body);
  CHECK(std::abs(c.circle.diameter - 0.1) < 1e-3);
  // Diameter-0.1 circles turning about the z axis all hold, so only the
  // horizontal normal is pinned down.
  CHECK(std::abs(c.circle.normal.z()) < 1e-3);
  CHECK(std::abs(c.circle.center.z() - 0.05) < 1e-3);
  CHECK(certify_holding(skew.body, *skew.circle).verdict == Verdict::CertifiedHoldingEvidence);
  CHECK(std::abs(skew.circle->normal.x()) == doctest::Approx(1.0));

  for (const auto* r : {&a, &b, &c}) {
    CHECK(r->report.verdict == Verdict::CertifiedHoldingEvidence);
    CHECK(r->circle.diameter >= r->edge_lower_bound - 1e-9);
  }
}

TEST_CASE("property: searched circles respect the ratio bound and the slice identity") {
  for (const FamilyInstance& f : {octahedron_iceberg(1.2, 10), flat_tetrahedron(0.3), five_vertex_flat(0.2), wd_tetrahedron(2, 3, 2)}) {
    const HoldingSearchResult r = min_holding_circle(f.body);
    const double w = width3(f.body).width;
    CHECK(r.circle.diameter / w > 2.0 / 3.0);
    CHECK(r.circle.diameter >= nonintersecting_edge_bound(f.body).distance - 1e-9);
    // The circle is the enclosing circle of its own slice.
    const Circle3 s = slice_circle(f.body, {r.circle.normal, r.circle.normal.dot(r.circle.center)});
    CHECK(s.diameter == doctest::Approx(r.circle.diameter).epsilon(1e-6));
    const IcebergProfile p = iceberg_profile(f.body, {r.circle.normal, r.circle.normal.dot(r.circle.center)});
    if (p.orientation == IcebergOrientation::Neither) CHECK(w <= r.circle.diameter + 1e-6);
  }
}
