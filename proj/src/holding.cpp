#include "holdcert/holding.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holdcert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Interval {
  double lo;
  double hi;
};

// Intersects `set` with `arc` in place, using `scratch` as the output buffer.
void intersect_into(std::vector<Interval>& set, const Interval* arc, int arcs, std::vector<Interval>& scratch) {
  scratch.clear();
  for (const auto& x : set) {
    for (int i = 0; i < arcs; ++i) {
      const double lo = std::max(x.lo, arc[i].lo);
      const double hi = std::min(x.hi, arc[i].hi);
      if (hi - lo > 1e-15) scratch.push_back({lo, hi});
    }
  }
  set.swap(scratch);
}

double slice_diameter_at(const Polytope3& body_in_frame, double t, const Tolerances& tol) {
  try {
    const Slice s = slice_plane(body_in_frame, {Vec3::UnitZ(), t}, tol);
    return 2.0 * min_enclosing_circle(s.polygon.vertices()).radius;
  } catch (const GeometryError&) {
    return 0.0;
  }
}

struct SideMax {
  double diameter = 0.0;
  double height = 0.0;
};

// Largest slice circumdiameter for t in [lo, hi] (frame coordinates).
SideMax side_max(const Polytope3& body, double lo, double hi, int n, const Tolerances& tol) {
  SideMax best;
  if (!(hi > lo)) {
    best.diameter = slice_diameter_at(body, lo, tol);
    best.height = lo;
    return best;
  }
  n = std::max(n, 4);
  int arg = 0;
  std::vector<double> vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    vals[i] = slice_diameter_at(body, lo + (hi - lo) * i / n, tol);
    if (vals[i] > vals[arg]) arg = i;
  }
  best = {vals[arg], lo + (hi - lo) * arg / n};
  const double a = lo + (hi - lo) * std::max(0, arg - 1) / n;
  const double b = lo + (hi - lo) * std::min(n, arg + 1) / n;
  const auto r = opt::brent_minimize([&](double t) { return -slice_diameter_at(body, t, tol); }, a, b);
  if (-r.value > best.diameter) best = {-r.value, r.x};
  return best;
}

}  // namespace

Vec3 Circle3::point(double angle) const {
  const PlaneFrame f = frame();
  return f.to_world(radius() * Vec2(std::cos(angle), std::sin(angle)));
}

PenetrationResult circle_interior_intersects(const Circle3& c, const Polytope3& k, const Tolerances& tol) {
  const PlaneFrame f = c.frame();
  const double r = c.radius();
  const double tau = tol.geom * std::max({1.0, r, c.center.norm()});
  thread_local std::vector<Interval> feasible;
  thread_local std::vector<Interval> scratch;
  feasible.assign(1, {0.0, kTwoPi});
  for (const Face& face : k.faces()) {
    // Points strictly inside this face: alpha cos t + beta sin t < gamma.
    const double alpha = r * face.normal.dot(f.e1);
    const double beta = r * face.normal.dot(f.e2);
    const double gamma = face.offset - face.normal.dot(c.center) - tau;
    const double rho = std::hypot(alpha, beta);
    if (gamma >= rho) continue;
    if (gamma <= -rho) return {};
    const double half = std::numbers::pi - std::acos(std::clamp(gamma / rho, -1.0, 1.0));
    double s = std::atan2(beta, alpha) + std::numbers::pi - half;
    s = std::fmod(s, kTwoPi);
    if (s < 0) s += kTwoPi;
    const double e = s + 2.0 * half;
    const Interval arc[2] = {{s, std::min(e, kTwoPi)}, {0.0, e - kTwoPi}};
    intersect_into(feasible, arc, e > kTwoPi ? 2 : 1, scratch);
    if (feasible.empty()) return {};
  }
  const auto longest = std::max_element(feasible.begin(), feasible.end(), [](const Interval& a, const Interval& b) {
    return a.hi - a.lo < b.hi - b.lo;
  });
  return {true, c.point(0.5 * (longest->lo + longest->hi))};
}

Circle3 slice_circle(const Polytope3& k, const HalfSpace& plane, const Tolerances& tol) {
  const Slice s = slice_plane(k, plane, tol);
  const Circle2 mec = min_enclosing_circle(s.polygon.vertices());
  return {s.frame.to_world(mec.center), 2.0 * mec.radius, plane.normal};
}

SliceCircumProfile slice_circum_profile(const Polytope3& side, const Vec3& axis, int n_heights,
                                        const Tolerances& tol) {
  const Vec3 n = axis.normalized();
  const double lo = -side.support(-n);
  const double hi = side.support(n);
  SliceCircumProfile out;
  n_heights = std::max(n_heights, 2);
  for (int i = 0; i < n_heights; ++i) {
    const double t = lo + (hi - lo) * i / (n_heights - 1);
    try {
      const Circle3 c = slice_circle(side, {n, t}, tol);
      out.records.push_back({t, c.center, c.diameter});
    } catch (const GeometryError&) {
    }
  }
  return out;
}

BlockCertificate translation_block_certificate(const Polytope3& k, const Circle3& c, const Tolerances& tol,
                                               int n_heights) {
  const SplitBody split = split_body(k, c.frame(), tol);
  const double top = split.body.support(Vec3::UnitZ());
  const double bottom = -split.body.support(-Vec3::UnitZ());
  BlockCertificate out;
  if (top > 0.0) {
    const SideMax m = side_max(split.body, 0.0, top, n_heights, tol);
    out.max_diameter_above = m.diameter;
    out.height_above = m.height;
  }
  if (bottom < 0.0) {
    const SideMax m = side_max(split.body, bottom, 0.0, n_heights, tol);
    out.max_diameter_below = m.diameter;
    out.height_below = m.height;
  }
  out.blocked_above = out.max_diameter_above > c.diameter + tol.opt;
  out.blocked_below = out.max_diameter_below > c.diameter + tol.opt;
  return out;
}

double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1, Vec3* on_a,
                        Vec3* on_b) {
  const Vec3 d1 = a1 - a0;
  const Vec3 d2 = b1 - b0;
  const Vec3 r = a0 - b0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  constexpr double tiny = 1e-300;
  double s = 0.0;
  double t = 0.0;
  if (a <= tiny && e <= tiny) {
    s = t = 0.0;
  } else if (a <= tiny) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= tiny) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 p = a0 + s * d1;
  const Vec3 q = b0 + t * d2;
  if (on_a) *on_a = p;
  if (on_b) *on_b = q;
  return (p - q).norm();
}

EdgeBound nonintersecting_edge_bound(const Polytope3& k) {
  const auto& v = k.vertices();
  const auto& edges = k.edges();
  EdgeBound best{std::numeric_limits<double>::infinity(), {-1, -1}};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) continue;
      const double dist = segment_distance(v[a], v[b], v[c], v[d]);
      if (dist < best.distance) best = {dist, {static_cast<int>(i), static_cast<int>(j)}};
    }
  }
  if (best.edges.first < 0) throw GeometryError(ErrorKind::DegenerateInput, "no pair of disjoint edges");
  return best;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedHoldingEvidence: return "CertifiedHoldingEvidence";
    case Verdict::EscapeFound: return "EscapeFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

}  // namespace holdcert
