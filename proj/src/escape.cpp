#include "holdcert/holding.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>

namespace holdcert {

namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

using Key = bg::model::point<double, 9, bg::cs::cartesian>;
using Entry = std::pair<Key, std::size_t>;
using Tree = bgi::rtree<Entry, bgi::rstar<16>>;

// Normals are unoriented: n and -n describe the same circle, so the
// embedding uses n n^T. Scaling by r makes rotations comparable with
// translations of the circle's points.
Key embed(const Pose& p, double r) {
  const Vec3& n = p.normal;
  const double s = r / std::sqrt(2.0);
  const double q = std::sqrt(2.0);
  Key k;
  bg::set<0>(k, p.center.x());
  bg::set<1>(k, p.center.y());
  bg::set<2>(k, p.center.z());
  bg::set<3>(k, s * n.x() * n.x());
  bg::set<4>(k, s * n.y() * n.y());
  bg::set<5>(k, s * n.z() * n.z());
  bg::set<6>(k, s * q * n.x() * n.y());
  bg::set<7>(k, s * q * n.x() * n.z());
  bg::set<8>(k, s * q * n.y() * n.z());
  return k;
}

Vec3 align(const Vec3& from, const Vec3& to) { return from.dot(to) < 0 ? -to : to; }

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 slerp(const Vec3& a, const Vec3& b, double f) {
  const double ang = angle_between(a, b);
  if (ang < 1e-12) return a;
  const double s = std::sin(ang);
  return ((std::sin((1.0 - f) * ang) / s) * a + (std::sin(f * ang) / s) * b).normalized();
}

// Upper bound on how far any circle point moves between two poses.
double displacement(const Pose& a, const Pose& b, double r) {
  return (b.center - a.center).norm() + r * angle_between(a.normal, align(a.normal, b.normal));
}

// Motions shorter than this are accepted once both ends are free.
double resolution_floor(double r) { return 1e-3 * r; }

Pose interpolate(const Pose& a, const Pose& b, double f) {
  return {a.center + f * (b.center - a.center), slerp(a.normal, align(a.normal, b.normal), f)};
}

bool pose_free(const Polytope3& k, const Pose& p, double diameter, const Tolerances& tol) {
  return !circle_interior_intersects({p.center, diameter, p.normal}, k, tol).intersects;
}

// Lower bound on the distance from the circle to K. Face slacks are
// 1-Lipschitz in space, and along the circle they change by at most r per
// radian, so the sampled minimum overestimates by at most r * pi / n.
double clearance(const Polytope3& k, const Pose& p, double r) {
  constexpr int n = 128;
  const PlaneFrame f = PlaneFrame::from_normal(p.normal, p.center);
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    lo = std::min(lo, k.max_face_violation(p.center + r * (std::cos(t) * f.e1 + std::sin(t) * f.e2)));
  }
  return std::max(0.0, lo - r * std::numbers::pi / n);
}

// Every pose between a and b lies within t * D of a and (1 - t) * D of b, so
// the segment is free once the end clearances cover D. Otherwise bisect,
// down to `floor`.
bool segment_free(const Polytope3& k, const Pose& a, const Pose& b, double ca, double cb, double r, double floor,
                  const Tolerances& tol) {
  const double span = displacement(a, b, r);
  if (ca + cb > span || span <= floor) return true;
  const Pose mid = interpolate(a, b, 0.5);
  if (!pose_free(k, mid, 2.0 * r, tol)) return false;
  const double cm = clearance(k, mid, r);
  return segment_free(k, a, mid, ca, cm, r, floor, tol) && segment_free(k, mid, b, cm, cb, r, floor, tol);
}

bool motion_free(const Polytope3& k, const Pose& a, const Pose& b, double diameter, double floor,
                 const Tolerances& tol) {
  // The far end collides most often, so it is tried first.
  if (!pose_free(k, b, diameter, tol)) return false;
  const double r = 0.5 * diameter;
  return segment_free(k, a, b, clearance(k, a, r), clearance(k, b, r), r, floor, tol);
}

}  // namespace

EscapeResult escape_search(const Polytope3& k, const Circle3& start, const EscapeOptions& options,
                           const Tolerances& tol) {
  const double d = start.diameter;
  const double r = 0.5 * d;
  const Vec3 centroid = k.vertex_centroid();
  const double circum = k.circumradius();
  EscapeResult out;
  out.step = options.step > 0 ? options.step : circum / 50.0;
  out.escape_radius = options.escape_radius > 0 ? options.escape_radius : 10.0 * circum;
  const double resolution = resolution_floor(r);

  if (!(d > 0.0)) throw GeometryError(ErrorKind::InvalidParam, "escape search needs a positive diameter");
  const Pose root{start.center, start.normal.normalized()};
  if (!pose_free(k, root, d, tol)) {
    throw GeometryError(ErrorKind::InvalidStart, "start circle penetrates the body");
  }

  std::vector<Pose> nodes{root};
  std::vector<std::size_t> parent{0};
  Tree tree;
  tree.insert({embed(root, r), 0});

  auto finish = [&](std::size_t leaf) {
    EscapePath path;
    for (std::size_t i = leaf;; i = parent[i]) {
      path.poses.push_back(nodes[i]);
      if (i == 0) break;
    }
    std::reverse(path.poses.begin(), path.poses.end());
    path.collision_free.reserve(path.poses.size());
    for (const Pose& p : path.poses) path.collision_free.push_back(pose_free(k, p, d, tol));
    out.path = std::move(path);
  };

  if ((root.center - centroid).norm() >= out.escape_radius) {
    out.tree_size = 1;
    finish(0);
    return out;
  }

  Rng rng(options.seed);
  const double sample_radius = circum + r;
  while (out.poses_used < options.budget) {
    Pose target;
    const double roll = rng.uniform();
    const bool toward_goal = roll < options.goal_bias;
    if (toward_goal) {
      target.center = centroid + 1.05 * out.escape_radius * rng.unit_vector();
    } else {
      const double rad = sample_radius * std::cbrt(rng.uniform());
      target.center = centroid + rad * rng.unit_vector();
    }
    target.normal = rng.unit_vector();

    std::vector<Entry> hit;
    tree.query(bgi::nearest(embed(target, r), 1), std::back_inserter(hit));
    std::size_t from = hit.front().second;
    // A quarter of the samples only translate the nearest circle.
    if (rng.uniform() < 0.25) target.normal = nodes[from].normal;

    // Extend greedily toward the target until blocked or reached.
    while (out.poses_used < options.budget) {
      const Pose& cur = nodes[from];
      const double len = displacement(cur, target, r);
      if (len < 1e-12) break;
      Pose next = len <= out.step ? Pose{target.center, align(cur.normal, target.normal)}
                                  : interpolate(cur, target, out.step / len);
      ++out.poses_used;
      // Blocked steps are halved until free, so narrow passages stay reachable.
      bool free = motion_free(k, cur, next, d, resolution, tol);
      bool shortened = false;
      for (int halving = 0; !free && halving < options.max_halvings; ++halving) {
        next = interpolate(cur, next, 0.5);
        free = motion_free(k, cur, next, d, resolution, tol);
        shortened = true;
      }
      if (!free) break;
      nodes.push_back(next);
      parent.push_back(from);
      from = nodes.size() - 1;
      tree.insert({embed(next, r), from});
      if ((next.center - centroid).norm() >= out.escape_radius) {
        out.tree_size = nodes.size();
        finish(from);
        return out;
      }
      if (len <= out.step || shortened) break;
    }
  }
  out.tree_size = nodes.size();
  return out;
}

bool validate_escape_path(const Polytope3& k, double diameter, const EscapePath& path, double step,
                          const Tolerances& tol) {
  if (path.poses.empty()) return false;
  const double r = 0.5 * diameter;
  const double resolution = resolution_floor(r);
  for (const Pose& p : path.poses) {
    if (!pose_free(k, p, diameter, tol)) return false;
  }
  for (std::size_t i = 1; i < path.poses.size(); ++i) {
    if (displacement(path.poses[i - 1], path.poses[i], r) > step * (1.0 + 1e-9)) return false;
    if (!motion_free(k, path.poses[i - 1], path.poses[i], diameter, resolution, tol)) return false;
  }
  return true;
}

}  // namespace holdcert
