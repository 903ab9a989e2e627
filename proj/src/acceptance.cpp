#include "holdcert/acceptance.hpp"

#include "holdcert/families.hpp"
#include "holdcert/holding.hpp"
#include "holdcert/planar.hpp"
#include "holdcert/polytope.hpp"
#include "holdcert/projection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace holdcert::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) { return fmt::format("{:.10g}", x); }

Check near(std::string name, double expected, double got, double tol) {
  return {std::move(name), num(expected), num(got), fmt::format("{:g}", tol), std::abs(got - expected) <= tol};
}

Check greater(std::string name, double got, double bound) {
  return {std::move(name), "> " + num(bound), num(got), "strict", got > bound};
}

Check less(std::string name, double got, double bound) {
  return {std::move(name), "< " + num(bound), num(got), "strict", got < bound};
}

Check at_most(std::string name, double got, double bound) {
  return {std::move(name), "<= " + num(bound), num(got), "-", got <= bound};
}

Check at_least(std::string name, double got, double bound) {
  return {std::move(name), ">= " + num(bound), num(got), "-", got >= bound};
}

Check flag(std::string name, std::string expected, std::string got) {
  const bool pass = expected == got;
  return {std::move(name), std::move(expected), std::move(got), "exact", pass};
}

Check flag(std::string name, bool got) { return flag(std::move(name), "true", got ? "true" : "false"); }

Circle3 predicted_circle(const FamilyInstance& f) {
  if (!f.circle) throw GeometryError(ErrorKind::NotFound, f.family + " has no predicted circle");
  return *f.circle;
}

HalfSpace circle_plane(const Circle3& c) { return {c.normal, c.normal.dot(c.center)}; }

// Horizontal width from first principles: the separation of the two support
// lines of slope k, minimized over the breakpoints k = ds/dt of point pairs.
double wh_oracle(const std::vector<Vec2>& pts) {
  auto spread = [&](double k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& p : pts) {
      const double s = p.x() - k * p.y();
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return hi - lo;
  };
  double best = spread(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dt = pts[i].y() - pts[j].y();
      if (std::abs(dt) > 1e-14) best = std::min(best, spread((pts[i].x() - pts[j].x()) / dt));
    }
  }
  return best;
}

// Points of the polygon on one side of t = 0, with the crossings of the axis.
std::vector<Vec2> side_points(const Polygon2& p, double sign) {
  std::vector<Vec2> out;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    if (sign * a.y() >= 0.0) out.push_back(a);
    if ((a.y() < 0.0 && b.y() > 0.0) || (a.y() > 0.0 && b.y() < 0.0)) {
      out.emplace_back(a.x() + (b.x() - a.x()) * (-a.y()) / (b.y() - a.y()), 0.0);
    }
  }
  return out;
}

// Width by brute force over edge directions.
double width_oracle(const Polygon2& p) {
  const auto& v = p.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = (v[(i + 1) % v.size()] - v[i]).normalized();
    const Vec2 n(-e.y(), e.x());
    double far = 0.0;
    for (const Vec2& q : v) far = std::max(far, std::abs(n.dot(q - v[i])));
    best = std::min(best, far);
  }
  return best;
}

double min_edge_distance(const Polygon2& p, const Vec2& c) {
  const auto& v = p.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = (v[(i + 1) % v.size()] - v[i]).normalized();
    best = std::min(best, e.x() * (c.y() - v[i].y()) - e.y() * (c.x() - v[i].x()));
  }
  return best;
}

// ---- criteria ---------------------------------------------------------------

void ratio_bound(CriterionResult& r, const Options& o) {
  const std::vector<std::pair<double, double>> params{{1.2, 10.0}, {1.05, 50.0}, {1.01, 200.0}};
  const auto t0 = Clock::now();
  std::vector<double> ratios;
  for (const auto& [a, h] : params) {
    const FamilyInstance f = octahedron_iceberg(a, h);
    const double w = width3(f.body).width;
    const HoldingSearchResult found = min_holding_circle(f.body, {}, o.tol);
    const double ratio = found.circle.diameter / w;
    ratios.push_back(ratio);
    const std::string tag = fmt::format("({}, {})", a, h);
    r.checks.push_back(near("search d vs closed form " + tag, f.predicted.at("d").scalar(), found.circle.diameter, 1e-4));
    r.checks.push_back(greater("d/w " + tag, ratio, 2.0 / 3.0));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
  r.checks.push_back(flag("ratios decrease along the sequence", decreasing));
  r.checks.push_back(greater("final ratio lower end", ratios.back(), 0.6667));
  r.checks.push_back(less("final ratio upper end", ratios.back(), 0.675));
  r.checks.push_back(less("runtime seconds", seconds_since(t0), 60.0));
}

void ratio_limits(CriterionResult& r, const Options&) {
  const FamilyInstance f = octahedron_iceberg(1.001, 5.0);
  const double phi = std::atan(0.001 / std::sqrt(3.0));
  const double d = 2.0 * 1.001 * std::cos(phi);
  r.checks.push_back(near("d(1.001, 5) closed form evaluation", d, f.predicted.at("d").scalar(), 1e-15));
  r.checks.push_back(near("d(1.001, 5) close to 2", 2.0, f.predicted.at("d").scalar(), 1e-3));
  const double w = width3(octahedron_iceberg(1.01, 500.0).body).width;
  r.checks.push_back(near("w(1.01, 500) close to 3", 3.0, w, 1e-2));
}

void iceberg_certification(CriterionResult& r, const Options& o) {
  const FamilyInstance f = octahedron_iceberg(1.38, 5.0);
  const IcebergProfile p =
      iceberg_profile(f.body, circle_plane(predicted_circle(f)), ProfileOptions{o.theta_samples, true}, o.tol);
  r.checks.push_back(flag("orientation", "AsGiven", to_string(p.orientation)));
  r.checks.push_back(greater("margin", p.margin, 0.0));
}

void residual_identities(CriterionResult& r, const Options& o) {
  Rng rng(o.seed);
  double worst_min = 0.0;
  double worst_max = 0.0;
  double worst_oracle = 0.0;
  int accepted = 0;
  while (accepted < o.random_cases) {
    Polygon2 p = random_convex_polygon(rng, 3 + static_cast<int>(rng.uniform() * 10.0), rng.uniform(0.5, 3.0));
    const double shift = rng.uniform(-0.5, 0.5);
    std::vector<Vec2> moved;
    for (const Vec2& v : p.vertices()) moved.emplace_back(v.x() + 3.0 * shift, v.y() + shift);
    p = Polygon2::hull(moved);
    double tmin = std::numeric_limits<double>::infinity();
    double tmax = -tmin;
    for (const Vec2& v : p.vertices()) {
      tmin = std::min(tmin, v.y());
      tmax = std::max(tmax, v.y());
    }
    if (p.size() < 3 || tmax < 1e-3 || tmin > -1e-3) continue;
    ++accepted;
    const Lemma1Result l = lemma1_identities(p);
    worst_min = std::max(worst_min, l.residual_min);
    worst_max = std::max(worst_max, l.residual_max);
    const double up = wh_oracle(side_points(p, 1.0));
    const double lo = wh_oracle(side_points(p, -1.0));
    const double all = wh_oracle(p.vertices());
    worst_oracle = std::max({worst_oracle, std::abs(up - l.wh_upper), std::abs(lo - l.wh_lower), std::abs(all - l.wh_union)});
  }
  r.checks.push_back(less(fmt::format("max residual_min over {} polygons", accepted), worst_min, 1e-9));
  r.checks.push_back(less(fmt::format("max residual_max over {} polygons", accepted), worst_max, 1e-9));
  r.checks.push_back(less("max |w_h - pairwise-slope oracle|", worst_oracle, 1e-9));
}

void inradius_bound(CriterionResult& r, const Options& o) {
  Rng rng(o.seed + 1);
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_width = 0.0;
  double worst_inside = 0.0;
  for (int i = 0; i < o.random_cases; ++i) {
    const Polygon2 p = random_convex_polygon(rng, 3 + static_cast<int>(rng.uniform() * 12.0), rng.uniform(0.5, 3.0));
    if (p.size() < 3) continue;
    const double w = width2(p).width;
    const Circle2 c = chebyshev_inscribed(p);
    worst_excess = std::max(worst_excess, w - 3.0 * c.radius);
    worst_width = std::max(worst_width, std::abs(w - width_oracle(p)));
    worst_inside = std::max(worst_inside, c.radius - min_edge_distance(p, c.center));
  }
  r.checks.push_back(at_most("max (w2 - 3r) over random polygons", worst_excess, 1e-9));
  r.checks.push_back(less("max |w2 - edge-direction oracle|", worst_width, 1e-9));
  r.checks.push_back(less("inscribed circle overhang", worst_inside, 1e-9));

  const double side = 2.0 * std::sqrt(3.0);
  const std::vector<Vec2> tri{{-side / 2, 0.0}, {side / 2, 0.0}, {0.0, 3.0}};
  const Polygon2 t = Polygon2::hull(tri);
  const double oracle = 2.0 * t.area() / (3.0 * side);
  r.checks.push_back(near("equilateral height 3: inradius", 1.0, chebyshev_inscribed(t).radius, 1e-9));
  r.checks.push_back(near("equilateral height 3: area / semiperimeter", 1.0, oracle, 1e-12));
}

void width_chain(CriterionResult& r, const Options& o) {
  const FamilyInstance f = octahedron_iceberg(1.01, 200.0);
  const ChainCertificate c = chain_certificate(f.body, predicted_circle(f), ChainOptions{200, o.theta_samples}, o.tol);
  r.checks.push_back(at_most("w <= min w_h(lower part)", c.width, c.min_wh_lower));
  r.checks.push_back(less("min w_h(lower part) < w2(section)", c.min_wh_lower, c.section_width));
  r.checks.push_back(at_most("w2(section) <= 3d/2", c.section_width, c.three_halves_d + o.tol.geom));
  r.checks.push_back(flag("certificate flags all hold", c.all_hold()));
  r.checks.push_back(near("min w_h(section prism) vs w2(section)", c.section_width, c.min_wh_section_projection, 1e-6));
  const ExtremalityDiagnostics e = extremality_diagnostics(c);
  r.checks.push_back(less("Hausdorff(section, equilateral triangle), d scaled to 2", e.hausdorff, 0.05));
  r.checks.push_back(less("slice cluster distance to the three contact directions", e.cluster_distance, 0.05));
}

void flat_tetrahedron_values(CriterionResult& r, const Options& o) {
  const FamilyInstance f = flat_tetrahedron(0.2);
  const double d = 2.0 * std::sin(std::atan(0.2));
  const HoldingSearchResult found = min_holding_circle(f.body, {}, o.tol);
  r.checks.push_back(near("search diameter", d, found.circle.diameter, 1e-3));
  r.checks.push_back(near("circle altitude", 0.038462, found.circle.center.z(), 1e-3));
  r.checks.push_back(flag("search verdict", "CertifiedHoldingEvidence", to_string(found.report.verdict)));
  const CylinderResult cyl = min_cylinder(f.body, {}, o.tol);
  r.checks.push_back(near("enclosing cylinder diameter", 1.04, cyl.diameter, 1e-6));
  const Vec3 u = cyl.axis_direction.normalized();
  // Point of the axis in the plane x = 0, when the axis is not parallel to it.
  const Vec3 q = std::abs(u.x()) > 1e-9 ? Vec3(cyl.axis_point - (cyl.axis_point.x() / u.x()) * u) : cyl.axis_point;
  r.checks.push_back(near("cylinder axis y", 0.0, q.y(), 1e-4));
  r.checks.push_back(near("cylinder axis z", 0.48, q.z(), 1e-4));
  double nearest = std::numeric_limits<double>::infinity();
  const auto& v = f.body.vertices();
  for (const auto& [a, b] : f.body.edges()) {
    for (const auto& [c, e] : f.body.edges()) {
      if (a == c || a == e || b == c || b == e) continue;
      nearest = std::min(nearest, segment_distance(v[a], v[b], v[c], v[e]));
    }
  }
  r.checks.push_back(near("nearest non-adjacent edges", d, nearest, 1e-12));
}

void skew_tetrahedron_values(CriterionResult& r, const Options& o) {
  const double eps = 0.1;
  const double a = eps * eps;
  const FamilyInstance f = skew_tetrahedron(eps);
  const Circle3 c = predicted_circle(f);
  // Crossings of the plane x = 0 by the two edges joining opposite sides.
  auto crossing = [](const Vec3& p, const Vec3& q) { return Vec3(p + (-p.x() / (q.x() - p.x())) * (q - p)); };
  const Vec3 x14 = crossing({-2, -1, eps}, {a, 0, 0});
  const Vec3 x23 = crossing({-1, 0, 0}, {2 * a, a, eps});
  const Vec3 f14(0, -a / (a + 2), a * eps / (a + 2));
  const Vec3 f23(0, a / (2 * a + 1), eps / (2 * a + 1));
  r.checks.push_back(near("edge A1A4 crossing vs closed form", 0.0, (x14 - f14).norm(), 1e-12));
  r.checks.push_back(near("edge A2A3 crossing vs closed form", 0.0, (x23 - f23).norm(), 1e-12));
  r.checks.push_back(less("A1A4 crossing distance from center", (x14 - c.center).norm(), c.radius()));
  r.checks.push_back(less("A2A3 crossing distance from center", (x23 - c.center).norm(), c.radius()));
  r.checks.push_back(flag("circle interior misses the body", !circle_interior_intersects(c, f.body, o.tol).intersects));
  for (int s = 0; s < o.escape_seeds; ++s) {
    EscapeOptions eo;
    eo.budget = o.escape_budget;
    eo.seed = o.seed + static_cast<std::uint64_t>(s);
    const EscapeResult e = escape_search(f.body, c, eo, o.tol);
    r.checks.push_back(flag(fmt::format("escape search seed {} budget {}", eo.seed, eo.budget), "NotFoundWithinBudget",
                            e.found() ? "Found" : "NotFoundWithinBudget"));
  }
}

void non_iceberg(CriterionResult& r, const Options& o) {
  for (const FamilyInstance& f : {flat_tetrahedron(0.2), five_vertex_flat(0.2)}) {
    const IcebergProfile p =
        iceberg_profile(f.body, circle_plane(predicted_circle(f)), ProfileOptions{o.theta_samples, true}, o.tol);
    r.checks.push_back(flag(f.family + " orientation", "Neither", to_string(p.orientation)));
    r.checks.push_back(less(f.family + " margin as given", p.margin, 0.0));
    r.checks.push_back(less(f.family + " margin flipped", p.flipped_margin, 0.0));
  }
}

void width_equals_diameter(CriterionResult& r, const Options& o) {
  const FamilyInstance f = wd_tetrahedron(2.0, 2.0, 1.0);
  const double w = width3(f.body).width;
  const double d = min_holding_circle(f.body, {}, o.tol).circle.diameter;
  r.checks.push_back(less("|w - d| for (2, 2, 1)", std::abs(w - d), 5e-3));
  std::vector<Vec3> moved = f.body.vertices();
  moved[0].x() += 0.1;
  const Polytope3 k = build_hull(moved, o.tol);
  const double wp = width3(k).width;
  const double dp = min_holding_circle(k, {}, o.tol).circle.diameter;
  r.checks.push_back(greater("|w - d| after moving a vertex by 0.1", std::abs(wp - dp), 1e-2));
}

void higher_dimensions(CriterionResult& r, const Options&) {
  for (int n = 3; n <= 8; ++n) {
    const double closed = n % 2 == 0 ? 1.0 / std::sqrt(n - 1.0) : std::sqrt(n + 1.0) / n;
    r.checks.push_back(near(fmt::format("C({})", n), closed, steinhagen_constant(n), 0.0));
  }
  for (int n : {4, 5}) {
    const FamilyInstanceND f = simplex_hull_nd(n, 1.001, 1000.0);
    const double target = 2.0 / steinhagen_constant(n);
    const double w = width_estimate_nd(f.body);
    r.checks.push_back(near(fmt::format("width estimate n = {} vs 2/C(n)", n), target, w, 0.02 * target));
  }
  const double a = 1.001;
  const double n = 5.0;
  const double closed = 2.0 * a * std::pow(1.0 + (a - 1.0) * (a - 1.0) / (n * n - 2.0 * n), -0.5);
  r.checks.push_back(
      near("sphere diameter n = 5", closed, simplex_hull_nd(5, a, 1000.0).predicted.at("sphere_diameter").scalar(), 1e-6));
}

void bevelled_cylinder_values(CriterionResult& r, const Options& o) {
  const double R = 10.0;
  const FamilyInstance f = bevelled_cylinder(R, 64);
  const HoldingSearchResult found = min_holding_circle(f.body, {}, o.tol);
  r.checks.push_back(flag("search verdict", "CertifiedHoldingEvidence", to_string(found.report.verdict)));
  r.checks.push_back(near("diametral circle diameter", 2.0 * R, found.circle.diameter, 1e-3));
  const Vec3 n = found.circle.normal;
  r.checks.push_back(near("normal in a bevel plane: |n_y| - |n_z|", 0.0, std::abs(n.y()) - std::abs(n.z()), 1e-3));
  r.checks.push_back(near("normal in a bevel plane: n_x", 0.0, n.x(), 1e-3));
  const double D = min_cylinder(f.body, {}, o.tol).diameter;
  r.checks.push_back(near("enclosing cylinder diameter", 2.0, D, 1e-4));
  // Radii or diameters give the same ratio; the published D = 1 is a radius.
  r.checks.push_back(at_least("d/D", found.circle.diameter / D, 4.0));
}

void tetrahedron_width(CriterionResult& r, const Options& o) {
  const std::vector<Vec3> pts{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<Vec3> unit;
  for (const Vec3& p : pts) unit.push_back(p / (2.0 * std::sqrt(2.0)));
  r.checks.push_back(near("width of the unit regular tetrahedron", std::sqrt(2.0) / 2.0, width3(build_hull(unit, o.tol)).width, 1e-9));
}

void oracle_equivalence(CriterionResult& r, const Options& o) {
  Rng rng(o.seed + 2);
  constexpr int samples = 10000;
  int agree = 0;
  int hits = 0;
  int redrawn = 0;
  int cases = 0;
  while (cases < o.random_cases) {
    std::vector<Vec3> pts;
    const int count = 5 + static_cast<int>(rng.uniform() * 8.0);
    for (int i = 0; i < count; ++i) pts.push_back(rng.unit_vector() * std::cbrt(rng.uniform()));
    Polytope3 k;
    try {
      k = build_hull(pts, o.tol);
    } catch (const GeometryError&) {
      continue;
    }
    const Circle3 c{Vec3(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)),
                    rng.uniform(0.1, 2.5), rng.unit_vector()};
    // Depth of the deepest sample on the circle; the face constraints are
    // 1-Lipschitz, so the true minimum lies within the sample spacing of it.
    double deepest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples; ++j) {
      deepest = std::min(deepest, k.max_face_violation(c.point(2.0 * std::numbers::pi * j / samples)));
    }
    const double spacing = c.radius() * std::numbers::pi / samples;
    if (std::abs(deepest) < 2.0 * spacing) {
      ++redrawn;
      continue;
    }
    ++cases;
    const bool oracle = deepest < 0.0;
    const bool fast = circle_interior_intersects(c, k, o.tol).intersects;
    hits += oracle ? 1 : 0;
    agree += oracle == fast ? 1 : 0;
  }
  r.checks.push_back(flag(fmt::format("agreement with dense sampling ({} intersecting, {} redrawn near tangency)", hits, redrawn),
                          fmt::format("{}/{}", cases, cases), fmt::format("{}/{}", agree, cases)));
  const std::vector<Vec3> cube{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  r.checks.push_back(near("enclosing cylinder of the unit cube", std::sqrt(2.0), min_cylinder(build_hull(cube, o.tol), {}, o.tol).diameter, 1e-4));
}

struct Entry {
  const char* title;
  void (*run)(CriterionResult&, const Options&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {"d/w stays above 2/3 and decreases toward it", ratio_bound},
      {"limits d -> 2 and w -> 3", ratio_limits},
      {"octahedron iceberg profile (1.38, 5)", iceberg_certification},
      {"horizontal width identities on random polygons", residual_identities},
      {"planar width at most three inradii", inradius_bound},
      {"width chain on iceberg (1.01, 200)", width_chain},
      {"flat tetrahedron eps = 0.2", flat_tetrahedron_values},
      {"skew tetrahedron eps = 0.1", skew_tetrahedron_values},
      {"flat bodies are not icebergs", non_iceberg},
      {"width equals holding diameter", width_equals_diameter},
      {"higher-dimensional constants and widths", higher_dimensions},
      {"bevelled cylinder R = 10, m = 64", bevelled_cylinder_values},
      {"regular tetrahedron width", tetrahedron_width},
      {"penetration and cylinder oracles", oracle_equivalence},
  };
  return table;
}

}  // namespace

bool CriterionResult::pass() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::pair<std::string, std::vector<int>>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<int>>> table{
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}},
      {"ratios", {1, 2}},
      {"theorem1", {1, 2}},
      {"iceberg", {3, 9}},
      {"residuals", {4}},
      {"lemma1", {4}},
      {"planar", {4, 5}},
      {"chain", {6}},
      {"tetrahedra", {7, 8, 10, 13}},
      {"higher-dim", {11}},
      {"bevelled", {12}},
      {"oracles", {13, 14}},
      {"fast", {2, 3, 4, 5, 6, 9, 11, 13, 14}},
  };
  return table;
}

std::vector<int> resolve_suite(const std::string& name) {
  for (const auto& [key, ids] : suites()) {
    if (key == name) return ids;
  }
  try {
    std::size_t used = 0;
    const int id = std::stoi(name, &used);
    if (used == name.size() && id >= 1 && id <= static_cast<int>(entries().size())) return {id};
  } catch (const std::exception&) {
  }
  throw GeometryError(ErrorKind::InvalidInput, "unknown suite: " + name);
}

CriterionResult run_criterion(int id, const Options& options) {
  const Entry& e = entries().at(static_cast<std::size_t>(id - 1));
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  const auto t0 = Clock::now();
  try {
    e.run(r, options);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& name, const Options& options, const Progress& progress) {
  std::vector<CriterionResult> out;
  for (int id : resolve_suite(name)) {
    out.push_back(run_criterion(id, options));
    if (progress) progress(out.back());
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  return fmt::format("[{}] {:2d} {} ({:.1f} s)", r.pass() ? "PASS" : "FAIL", r.id, r.title, r.seconds);
}

std::string detail_lines(const CriterionResult& r) {
  std::string out;
  for (const Check& c : r.checks) {
    out += fmt::format("      {} {}: expected {}, got {}, tol {}\n", c.pass ? "ok  " : "FAIL", c.name, c.expected, c.got,
                       c.tolerance);
  }
  if (!r.error.empty()) out += fmt::format("      error: {}\n", r.error);
  return out;
}

}  // namespace holdcert::acceptance
