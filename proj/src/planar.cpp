#include "holdcert/planar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace holdcert {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

Polygon2 Polygon2::hull(std::span<const Vec2> points, double tol) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = tol * std::max(1.0, scale);

  std::vector<Vec2> unique;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : unique) {
      if ((p - q).norm() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(p);
  }
  Polygon2 out;
  if (unique.size() <= 1) {
    out.vertices_ = unique;
    return out;
  }
  std::sort(unique.begin(), unique.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });

  // Cross products are compared against eps * edge length to drop near-collinear points.
  auto turns_left = [&](const Vec2& o, const Vec2& a, const Vec2& b) {
    return cross(o, a, b) > eps * std::max((b - o).norm(), 1e-300);
  };
  std::vector<Vec2> h(2 * unique.size());
  std::size_t k = 0;
  for (const auto& p : unique) {
    while (k >= 2 && !turns_left(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  for (std::size_t i = unique.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = unique[i];
    while (k >= lower && !turns_left(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() < 3) {
    // Collinear input: keep the two extreme points.
    h = {unique.front(), unique.back()};
    double best = 0.0;
    for (std::size_t i = 0; i < unique.size(); ++i) {
      for (std::size_t j = i + 1; j < unique.size(); ++j) {
        const double d = (unique[i] - unique[j]).squaredNorm();
        if (d > best) {
          best = d;
          h = {unique[i], unique[j]};
        }
      }
    }
  }
  out.vertices_ = std::move(h);
  return out;
}

Polygon2 Polygon2::from_ccw(std::vector<Vec2> vertices) {
  Polygon2 p;
  p.vertices_ = std::move(vertices);
  return p;
}

double Polygon2::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % vertices_.size()];
    a += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * a;
}

Vec2 Polygon2::centroid() const {
  if (vertices_.empty()) return Vec2::Zero();
  const double a = area();
  if (std::abs(a) < 1e-300) {
    Vec2 c = Vec2::Zero();
    for (const auto& v : vertices_) c += v;
    return c / static_cast<double>(vertices_.size());
  }
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % vertices_.size()];
    const double w = p.x() * q.y() - p.y() * q.x();
    c += (p + q) * w;
  }
  return c / (6.0 * a);
}

bool Polygon2::contains(const Vec2& p, double tol) const {
  if (vertices_.size() < 3) return distance_to(p) <= tol;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % vertices_.size()];
    if (cross(a, b, p) < -tol * (b - a).norm()) return false;
  }
  return true;
}

double Polygon2::distance_to(const Vec2& p) const {
  if (vertices_.empty()) return std::numeric_limits<double>::infinity();
  if (vertices_.size() == 1) return (p - vertices_[0]).norm();
  if (vertices_.size() >= 3 && contains(p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    best = std::min(best, point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return best;
}

double Polygon2::breadth(const Vec2& u) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : vertices_) {
    const double s = u.dot(v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

Polygon2 Polygon2::clipped(const Vec2& normal, double offset) const {
  std::vector<Vec2> out;
  const std::size_t n = vertices_.size();
  if (n == 0) return {};
  if (n == 1) {
    if (normal.dot(vertices_[0]) <= offset) out.push_back(vertices_[0]);
    return from_ccw(out);
  }
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    const double da = normal.dot(a) - offset;
    const double db = normal.dot(b) - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
    if (n == 2 && db <= 0.0) out.push_back(b);
  }
  return hull(out);
}

Width2Result width2(const Polygon2& p) {
  Width2Result r;
  const auto& v = p.vertices();
  if (p.is_degenerate()) {
    r.degenerate = true;
    if (v.size() == 2) {
      const Vec2 d = (v[1] - v[0]).normalized();
      r.direction = Vec2(-d.y(), d.x());
    }
    return r;
  }
  r.width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = (v[(i + 1) % v.size()] - v[i]).normalized();
    const Vec2 n(e.y(), -e.x());  // outward for counterclockwise order
    const double b = n.dot(v[i]);
    double depth = 0.0;
    for (const auto& q : v) depth = std::max(depth, b - n.dot(q));
    if (depth < r.width) {
      r.width = depth;
      r.direction = n;
    }
  }
  return r;
}

HorizontalWidthResult horizontal_width(const Polygon2& p) {
  HorizontalWidthResult r;
  const auto& v = p.vertices();
  if (v.empty()) return r;

  auto evaluate = [&](double a) {
    Strip s{a, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& q : v) {
      const double x = q.x() - a * q.y();
      s.b1 = std::min(s.b1, x);
      s.b2 = std::max(s.b2, x);
    }
    return s;
  };

  double tscale = 0.0;
  for (const auto& q : v) tscale = std::max(tscale, std::abs(q.y()));
  const double flat = 1e-14 * std::max(1.0, tscale);

  bool have = false;
  const std::size_t n = v.size();
  const std::size_t edges = n <= 2 ? n - 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    const double dt = b.y() - a.y();
    if (std::abs(dt) <= flat) continue;
    const Strip s = evaluate((b.x() - a.x()) / dt);
    if (!have || s.horizontal_width() < r.strip.horizontal_width()) {
      r.strip = s;
      have = true;
    }
  }
  if (!have) r.strip = evaluate(0.0);
  r.width = r.strip.horizontal_width();
  return r;
}

Lemma1Result lemma1_identities(const Polygon2& p, double tol) {
  const auto& v = p.vertices();
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  for (const auto& q : v) {
    tmin = std::min(tmin, q.y());
    tmax = std::max(tmax, q.y());
  }
  if (v.size() < 3 || !(tmax > tol) || !(tmin < -tol)) {
    throw GeometryError(ErrorKind::InvalidInput, "polygon does not cross the axis t = 0");
  }
  const Polygon2 upper = p.clipped(Vec2(0.0, -1.0), 0.0);
  const Polygon2 lower = p.clipped(Vec2(0.0, 1.0), 0.0);

  double smin = std::numeric_limits<double>::infinity();
  double smax = -smin;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    if (a.y() == 0.0) {
      smin = std::min(smin, a.x());
      smax = std::max(smax, a.x());
    }
    if ((a.y() < 0.0 && b.y() > 0.0) || (a.y() > 0.0 && b.y() < 0.0)) {
      const double s = a.x() + (b.x() - a.x()) * (-a.y()) / (b.y() - a.y());
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
  }

  Lemma1Result r;
  r.wh_upper = horizontal_width(upper).width;
  r.wh_lower = horizontal_width(lower).width;
  r.wh_intersection = smax - smin;
  r.wh_union = horizontal_width(p).width;
  r.residual_min = std::abs(r.wh_intersection - std::min(r.wh_upper, r.wh_lower));
  r.residual_max = std::abs(r.wh_union - std::max(r.wh_upper, r.wh_lower));
  return r;
}

namespace {

Circle2 circle_from_two(const Vec2& a, const Vec2& b) {
  return {(a + b) / 2.0, (a - b).norm() / 2.0};
}

Circle2 circle_from_three(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
  const double scale = std::max({ab.squaredNorm(), ac.squaredNorm(), 1e-300});
  if (std::abs(d) < 1e-14 * scale) {
    // Collinear: the farthest pair spans the circle.
    Circle2 best = circle_from_two(a, b);
    for (const Circle2& cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ux = (ac.y() * ab.squaredNorm() - ab.y() * ac.squaredNorm()) / d;
  const double uy = (ab.x() * ac.squaredNorm() - ac.x() * ab.squaredNorm()) / d;
  const Vec2 u(ux, uy);
  return {a + u, u.norm()};
}

bool outside(const Circle2& c, const Vec2& p) {
  return (p - c.center).norm() > c.radius * (1.0 + 1e-13) + 1e-300;
}

}  // namespace

Circle2 min_enclosing_circle(std::span<const Vec2> points) {
  if (points.empty()) return {};
  std::vector<Vec2> pts(points.begin(), points.end());
  // Fixed-seed shuffle keeps the expected linear running time and determinism.
  Rng rng(0x5eedc1u);
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::swap(pts[i - 1], pts[rng.next() % i]);
  }
  Circle2 c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!outside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (!outside(c, pts[j])) continue;
      c = circle_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (outside(c, pts[k])) c = circle_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, (p - c.center).norm());
  c.radius = r;
  return c;
}

Circle2 chebyshev_inscribed(const Polygon2& p) {
  if (p.is_degenerate()) {
    throw GeometryError(ErrorKind::DegenerateInput, "inscribed circle of a degenerate polygon");
  }
  const auto& v = p.vertices();
  const std::size_t m = v.size();
  std::vector<Vec2> normals(m);
  std::vector<double> offsets(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e = (v[(i + 1) % m] - v[i]).normalized();
    normals[i] = Vec2(e.y(), -e.x());
    offsets[i] = normals[i].dot(v[i]);
  }
  double scale = 0.0;
  for (const auto& q : v) scale = std::max(scale, q.norm());
  const double feas = 1e-11 * std::max(1.0, scale);

  // Maximize r subject to n_i . c + r <= b_i: the optimum sits at a vertex of
  // the (c, r) feasible region, i.e. where three constraints are tight.
  Circle2 best{p.centroid(), -1.0};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Matrix3d a;
        a << normals[i].x(), normals[i].y(), 1.0, normals[j].x(), normals[j].y(), 1.0,
            normals[k].x(), normals[k].y(), 1.0;
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d x = a.partialPivLu().solve(Eigen::Vector3d(offsets[i], offsets[j], offsets[k]));
        if (x[2] <= best.radius) continue;
        bool ok = true;
        for (std::size_t q = 0; q < m && ok; ++q) {
          ok = normals[q].dot(x.head<2>()) + x[2] <= offsets[q] + feas;
        }
        if (ok) best = {x.head<2>(), x[2]};
      }
    }
  }
  // Clamp the radius to the true clearance of the chosen center.
  double clearance = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < m; ++q) {
    clearance = std::min(clearance, offsets[q] - normals[q].dot(best.center));
  }
  best.radius = std::max(0.0, clearance);
  return best;
}

double hausdorff_distance(const Polygon2& p, const Polygon2& q) {
  // Distance to a convex set is convex, so the sup over a polygon sits at a vertex.
  double d = 0.0;
  for (const auto& v : p.vertices()) d = std::max(d, q.distance_to(v));
  for (const auto& v : q.vertices()) d = std::max(d, p.distance_to(v));
  return d;
}

Polygon2 random_convex_polygon(Rng& rng, int k, double radius) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double a = 2.0 * M_PI * rng.uniform();
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return Polygon2::hull(pts);
}

}  // namespace holdcert
