#include "holdcert/polytope.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace holdcert {

namespace {

double coordinate_scale(std::span<const Vec3> pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(1.0, s);
}

struct Triangle {
  std::array<int, 3> v;
  Vec3 normal;
  double offset;
  bool alive = true;
};

Triangle make_triangle(const std::vector<Vec3>& pts, int a, int b, int c) {
  Triangle t{{a, b, c}, Vec3::Zero(), 0.0};
  const Vec3 n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = n.norm();
  t.normal = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
  t.offset = t.normal.dot(pts[a]);
  return t;
}

// Counterclockwise hull of the indexed points in a plane frame; drops
// collinear points so every surviving index is a true corner.
std::vector<int> facet_polygon(const std::vector<Vec3>& pts, const std::vector<int>& ids,
                               const PlaneFrame& frame, double eps) {
  std::vector<std::pair<Vec2, int>> p;
  for (int id : ids) p.emplace_back(frame.to_local(pts[id]), id);
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a.first.x() < b.first.x() || (a.first.x() == b.first.x() && a.first.y() < b.first.y());
  });
  p.erase(std::unique(p.begin(), p.end(),
                      [&](const auto& a, const auto& b) { return (a.first - b.first).norm() <= eps; }),
          p.end());
  if (p.size() < 3) return {};
  auto left = [&](const Vec2& o, const Vec2& a, const Vec2& b) {
    const double c = (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    return c > eps * (b - o).norm();
  };
  std::vector<std::pair<Vec2, int>> h(2 * p.size());
  std::size_t k = 0;
  for (const auto& q : p) {
    while (k >= 2 && !left(h[k - 2].first, h[k - 1].first, q.first)) --k;
    h[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !left(h[k - 2].first, h[k - 1].first, p[i].first)) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  std::vector<int> out;
  for (const auto& q : h) out.push_back(q.second);
  return out;
}

}  // namespace

double Polytope3::support(const Vec3& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, u.dot(v));
  return best;
}

double Polytope3::max_face_violation(const Vec3& p) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : faces_) worst = std::max(worst, f.normal.dot(p) - f.offset);
  return worst;
}

Vec3 Polytope3::vertex_centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices_) c += v;
  return vertices_.empty() ? c : Vec3(c / static_cast<double>(vertices_.size()));
}

double Polytope3::circumradius() const {
  const Vec3 c = vertex_centroid();
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, (v - c).norm());
  return r;
}

double Polytope3::volume() const {
  double vol = 0.0;
  for (const auto& f : faces_) {
    Vec3 area = Vec3::Zero();
    const auto& ids = f.vertices;
    for (std::size_t i = 1; i + 1 < ids.size(); ++i) {
      area += (vertices_[ids[i]] - vertices_[ids[0]]).cross(vertices_[ids[i + 1]] - vertices_[ids[0]]);
    }
    vol += 0.5 * area.dot(f.normal) * f.offset;
  }
  return vol / 3.0;
}

Polytope3 Polytope3::transformed(const Mat3& rotation, const Vec3& translation) const {
  Polytope3 out = *this;
  for (auto& v : out.vertices_) v = rotation * v + translation;
  for (auto& f : out.faces_) {
    f.normal = rotation * f.normal;
    f.offset += f.normal.dot(translation);
  }
  return out;
}

Polytope3 build_hull(std::span<const Vec3> input, const Tolerances& tol) {
  const double eps = tol.geom * coordinate_scale(input);

  std::vector<Vec3> pts;
  for (const auto& p : input) {
    if (!p.allFinite()) throw GeometryError(ErrorKind::InvalidInput, "non-finite coordinate");
    bool dup = false;
    for (const auto& q : pts) {
      if ((p - q).norm() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  if (pts.size() < 4) throw GeometryError(ErrorKind::DegenerateInput, "fewer than 4 distinct points");

  // Initial tetrahedron from extreme points.
  const int n = static_cast<int>(pts.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].x() < pts[i0].x()) i0 = i;
  }
  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  const Vec3 dir = (pts[i1] - pts[i0]).normalized();
  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec3 d = pts[i] - pts[i0];
    const double dist = (d - d.dot(dir) * dir).norm();
    if (dist > best) {
      best = dist;
      i2 = i;
    }
  }
  if (best <= eps) throw GeometryError(ErrorKind::DegenerateInput, "points are collinear");
  const Vec3 pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dist = std::abs(pn.dot(pts[i] - pts[i0]));
    if (dist > best) {
      best = dist;
      i3 = i;
    }
  }
  if (best <= eps) throw GeometryError(ErrorKind::DegenerateInput, "points are coplanar");

  std::vector<Triangle> tris;
  if (pn.dot(pts[i3] - pts[i0]) > 0.0) {
    tris = {make_triangle(pts, i0, i2, i1), make_triangle(pts, i0, i1, i3),
            make_triangle(pts, i1, i2, i3), make_triangle(pts, i2, i0, i3)};
  } else {
    tris = {make_triangle(pts, i0, i1, i2), make_triangle(pts, i0, i3, i1),
            make_triangle(pts, i1, i3, i2), make_triangle(pts, i2, i3, i0)};
  }

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::set<std::pair<int, int>> visible_edges;
    std::vector<std::size_t> visible;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (tris[t].alive && tris[t].normal.dot(pts[p]) - tris[t].offset > eps) visible.push_back(t);
    }
    if (visible.empty()) continue;
    for (std::size_t t : visible) {
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) visible_edges.emplace(v[e], v[(e + 1) % 3]);
      tris[t].alive = false;
    }
    for (const auto& [a, b] : visible_edges) {
      if (!visible_edges.count({b, a})) tris.push_back(make_triangle(pts, a, b, p));
    }
  }

  // Merge coplanar triangles into polygonal facets.
  struct Group {
    Vec3 normal_sum = Vec3::Zero();
    Vec3 normal;
    double offset;
    std::set<int> ids;
  };
  std::vector<Group> groups;
  for (const auto& t : tris) {
    if (!t.alive || t.normal.isZero()) continue;
    Group* target = nullptr;
    for (auto& g : groups) {
      if (g.normal.dot(t.normal) < 1.0 - 1e-9) continue;
      bool coplanar = true;
      for (int id : t.v) coplanar = coplanar && std::abs(g.normal.dot(pts[id]) - g.offset) <= 10.0 * eps;
      if (coplanar) {
        target = &g;
        break;
      }
    }
    const double area = (pts[t.v[1]] - pts[t.v[0]]).cross(pts[t.v[2]] - pts[t.v[0]]).norm();
    if (!target) {
      groups.push_back({Vec3::Zero(), t.normal, t.offset, {}});
      target = &groups.back();
    }
    target->normal_sum += area * t.normal;
    target->ids.insert(t.v.begin(), t.v.end());
  }

  Polytope3 out;
  std::map<int, int> remap;
  for (auto& g : groups) {
    const Vec3 normal = g.normal_sum.normalized();
    double offset = -std::numeric_limits<double>::infinity();
    for (int id : g.ids) offset = std::max(offset, normal.dot(pts[id]));
    const PlaneFrame frame = PlaneFrame::from_normal(normal, offset * normal);
    const std::vector<int> ids(g.ids.begin(), g.ids.end());
    const std::vector<int> poly = facet_polygon(pts, ids, frame, eps);
    if (poly.size() < 3) continue;
    Face f{normal, offset, {}};
    for (int id : poly) {
      auto [it, inserted] = remap.emplace(id, static_cast<int>(remap.size()));
      (void)inserted;
      f.vertices.push_back(it->second);
    }
    out.faces_.push_back(std::move(f));
  }
  out.vertices_.resize(remap.size());
  for (const auto& [src, dst] : remap) out.vertices_[dst] = pts[src];

  std::set<std::pair<int, int>> edges;
  for (const auto& f : out.faces_) {
    for (std::size_t i = 0; i < f.vertices.size(); ++i) {
      const int a = f.vertices[i];
      const int b = f.vertices[(i + 1) % f.vertices.size()];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  out.edges_.assign(edges.begin(), edges.end());

  const auto v = static_cast<long>(out.vertices_.size());
  const auto e = static_cast<long>(out.edges_.size());
  const auto f = static_cast<long>(out.faces_.size());
  if (v - e + f != 2) {
    throw GeometryError(ErrorKind::DegenerateInput, "hull failed the Euler check (near-degenerate input)");
  }
  return out;
}

WidthResult width3(const Polytope3& k) {
  const auto& verts = k.vertices();
  if (verts.size() < 4) throw GeometryError(ErrorKind::DegenerateInput, "width of a flat body");
  WidthResult r;
  r.width = std::numeric_limits<double>::infinity();

  const auto& faces = k.faces();
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    int arg = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t vi = 0; vi < verts.size(); ++vi) {
      const double s = f.normal.dot(verts[vi]);
      if (s < lo) {
        lo = s;
        arg = static_cast<int>(vi);
      }
    }
    if (f.offset - lo < r.width) {
      r = {f.offset - lo, f.normal, WidthFeature::FaceVertex, {static_cast<int>(fi), arg}};
    }
  }

  const auto& edges = k.edges();
  std::vector<Vec3> dirs;
  dirs.reserve(edges.size());
  for (const auto& [a, b] : edges) dirs.push_back((verts[b] - verts[a]).normalized());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Vec3 u = dirs[i].cross(dirs[j]);
      const double len = u.norm();
      if (len < 1e-9) continue;
      const Vec3 un = u / len;
      // Cheap reject: the breadth is at least the separation of the two edges.
      const double sep = std::abs(un.dot(verts[edges[i].first] - verts[edges[j].first]));
      if (sep >= r.width) continue;
      const double b = k.breadth(un);
      if (b < r.width) {
        r = {b, un, WidthFeature::EdgeEdge, {static_cast<int>(i), static_cast<int>(j)}};
      }
    }
  }
  if (!(r.width > 0.0)) throw GeometryError(ErrorKind::DegenerateInput, "zero width");
  return r;
}

Polytope3 clip_halfspace(const Polytope3& k, const HalfSpace& hs, const Tolerances& tol) {
  const auto& verts = k.vertices();
  const double eps = tol.geom * coordinate_scale(verts);
  std::vector<double> d(verts.size());
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    d[i] = hs.signed_distance(verts[i]);
    hi = std::max(hi, d[i]);
    lo = std::min(lo, d[i]);
  }
  if (hi <= eps) return k;
  if (lo >= -eps) throw GeometryError(ErrorKind::EmptyResult, "half-space misses the interior");

  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (d[i] <= eps) pts.push_back(verts[i]);
  }
  for (const auto& [a, b] : k.edges()) {
    if ((d[a] < -eps && d[b] > eps) || (d[a] > eps && d[b] < -eps)) {
      const double t = d[a] / (d[a] - d[b]);
      pts.push_back(verts[a] + t * (verts[b] - verts[a]));
    }
  }
  try {
    return build_hull(pts, tol);
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::DegenerateInput) {
      throw GeometryError(ErrorKind::EmptyResult, "clipped body has empty interior");
    }
    throw;
  }
}

Slice slice_plane(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol) {
  const auto& verts = k.vertices();
  const double eps = tol.geom * coordinate_scale(verts);
  Slice s;
  s.frame = PlaneFrame::from_normal(plane.normal, plane.offset * plane.normal);
  std::vector<double> d(verts.size());
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    d[i] = plane.signed_distance(verts[i]);
    if (std::abs(d[i]) <= eps) pts.push_back(s.frame.to_local(verts[i]));
  }
  for (const auto& [a, b] : k.edges()) {
    if ((d[a] < -eps && d[b] > eps) || (d[a] > eps && d[b] < -eps)) {
      const double t = d[a] / (d[a] - d[b]);
      pts.push_back(s.frame.to_local(verts[a] + t * (verts[b] - verts[a])));
    }
  }
  if (pts.empty()) throw GeometryError(ErrorKind::EmptyResult, "plane misses the body");
  s.polygon = Polygon2::hull(pts, tol.geom);
  s.kind = s.polygon.size() >= 3 ? SliceKind::Polygon
           : s.polygon.size() == 2 ? SliceKind::Segment
                                   : SliceKind::Point;
  return s;
}

double projected_enclosing_diameter(const Polytope3& k, const Vec3& u) {
  const PlaneFrame frame = PlaneFrame::from_normal(u, Vec3::Zero());
  std::vector<Vec2> pts;
  pts.reserve(k.vertices().size());
  for (const auto& v : k.vertices()) pts.push_back(frame.to_local(v));
  return 2.0 * min_enclosing_circle(pts).radius;
}

std::vector<Vec3> icosphere_directions(int level) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& t : f) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  return v;
}

CylinderResult min_cylinder(const Polytope3& k, const CylinderOptions& options, const Tolerances& tol) {
  struct Candidate {
    double diameter;
    Vec3 u;
  };
  std::vector<Candidate> cands;
  for (const Vec3& u : icosphere_directions(options.subdivision_level)) {
    // One representative of each antipodal pair.
    const bool upper = u.z() > 1e-12 || (std::abs(u.z()) <= 1e-12 &&
                                         (u.y() > 1e-12 || (std::abs(u.y()) <= 1e-12 && u.x() > 0.0)));
    if (!upper) continue;
    cands.push_back({projected_enclosing_diameter(k, u), u});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.diameter < b.diameter;
  });

  Candidate best = cands.front();
  const std::size_t starts = std::min<std::size_t>(8, cands.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const PlaneFrame local = PlaneFrame::from_normal(cands[s].u, Vec3::Zero());
    auto dir = [&](const Eigen::VectorXd& x) {
      return Vec3((local.normal + x[0] * local.e1 + x[1] * local.e2).normalized());
    };
    auto f = [&](const Eigen::VectorXd& x) { return projected_enclosing_diameter(k, dir(x)); };
    const auto r = opt::nelder_mead(f, Eigen::VectorXd::Zero(2), 0.02, tol.opt * 1e-4,
                                    options.refine_iterations);
    if (r.value < best.diameter) best = {r.value, dir(r.x)};
  }

  CylinderResult out;
  out.diameter = best.diameter;
  out.axis_direction = best.u;
  const PlaneFrame frame = PlaneFrame::from_normal(best.u, Vec3::Zero());
  std::vector<Vec2> pts;
  for (const auto& v : k.vertices()) pts.push_back(frame.to_local(v));
  const Circle2 c = min_enclosing_circle(pts);
  const Vec3 p = frame.to_world(c.center);
  const Vec3 centroid = k.vertex_centroid();
  out.axis_point = p + (centroid - p).dot(best.u) * best.u;
  return out;
}

Location point_location(const Polytope3& k, const Vec3& p, const Tolerances& tol) {
  const double m = k.max_face_violation(p);
  if (m < -tol.geom) return Location::Interior;
  if (m <= tol.geom) return Location::Boundary;
  return Location::Exterior;
}

}  // namespace holdcert
