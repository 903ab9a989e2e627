#include "holdcert/holding.hpp"

#include "holdcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holdcert {

namespace {

double slice_diameter_at(const Polytope3& body, double t, const Tolerances& tol) {
  try {
    const Slice s = slice_plane(body, {Vec3::UnitZ(), t}, tol);
    return 2.0 * min_enclosing_circle(s.polygon.vertices()).radius;
  } catch (const GeometryError&) {
    return 0.0;
  }
}

Polygon2 equilateral(const Vec2& center, double rotation, double height) {
  const double circum = 2.0 * height / 3.0;
  std::vector<Vec2> v;
  for (int k = 0; k < 3; ++k) {
    const double a = rotation + 2.0 * std::numbers::pi * k / 3.0;
    v.push_back(center + circum * Vec2(std::cos(a), std::sin(a)));
  }
  return Polygon2::from_ccw(std::move(v));
}

}  // namespace

ChainCertificate chain_certificate(const Polytope3& k, const Circle3& c, const ChainOptions& options,
                                   const Tolerances& tol) {
  ChainCertificate out;
  out.frame = c.frame();
  out.diameter = c.diameter;
  const double d = c.diameter;
  const SplitBody split = split_body(k, out.frame, tol);
  if (!split.upper || !split.lower) {
    throw GeometryError(ErrorKind::NoBlockingSlice, "circle plane does not split the body");
  }

  // Widest slice above the circle.
  const double top = split.body.support(Vec3::UnitZ());
  const int n = std::max(options.heights, 4);
  int arg = 0;
  std::vector<double> vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    vals[i] = slice_diameter_at(split.body, top * i / n, tol);
    if (vals[i] > vals[arg]) arg = i;
  }
  double t_h = top * arg / n;
  double d_h = vals[arg];
  {
    const double a = top * std::max(0, arg - 1) / n;
    const double b = top * std::min(n, arg + 1) / n;
    const auto r = opt::brent_minimize([&](double t) { return -slice_diameter_at(split.body, t, tol); }, a, b);
    if (-r.value > d_h) {
      d_h = -r.value;
      t_h = r.x;
    }
  }
  if (!(d_h > d + tol.opt) || !(t_h > tol.geom)) {
    throw GeometryError(ErrorKind::NoBlockingSlice, "no slice above the circle is wider than it");
  }

  const Slice slice = slice_plane(split.body, {Vec3::UnitZ(), t_h}, tol);
  out.slice_height = t_h;
  out.slice_polygon = slice.polygon;
  const Circle2 mec = min_enclosing_circle(slice.polygon.vertices());
  out.slice_diameter = 2.0 * mec.radius;
  out.slice_center = Vec3(mec.center.x(), mec.center.y(), t_h);
  out.axis_direction = out.slice_center.normalized();
  out.homothety_ratio = d / out.slice_diameter;

  const double contact_tol = 1e-7 * std::max(1.0, mec.radius);
  std::vector<Vec2> u;
  for (const Vec2& p : slice.polygon.vertices()) {
    if (std::abs((p - mec.center).norm() - mec.radius) <= contact_tol) {
      out.contacts.push_back(Vec3(p.x(), p.y(), t_h));
      u.push_back((p - mec.center).normalized());
    }
  }

  // Each contact a gives the plane parallel to the axis and tangent to C at
  // the image of a under the projection along the axis and the homothety.
  const Vec3 delta = out.axis_direction;
  for (std::size_t i = 0; i < out.contacts.size(); ++i) {
    const Vec3& a = out.contacts[i];
    const Vec3 projected = a - (a.z() / delta.z()) * delta;
    const Vec3 image = out.homothety_ratio * projected;
    out.contact_residual = std::max(out.contact_residual, std::abs(image.norm() - 0.5 * d));
    const Vec3 tangent = Vec3::UnitZ().cross(Vec3(u[i].x(), u[i].y(), 0.0));
    Vec3 nrm = tangent.cross(delta).normalized();
    if (nrm.dot(Vec3(u[i].x(), u[i].y(), 0.0)) < 0) nrm = -nrm;
    out.tangent_plane_normals.push_back(nrm);
    out.halfplane_normals.push_back(u[i]);
  }

  // Two antipodal contacts bound only a strip.
  std::vector<double> angles;
  for (const Vec2& v : u) angles.push_back(std::atan2(v.y(), v.x()));
  std::sort(angles.begin(), angles.end());
  double gap = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
    gap = std::max(gap, next - angles[i]);
  }
  out.strip = gap >= std::numbers::pi - 1e-9;

  const double big = 100.0 * (k.circumradius() + k.vertex_centroid().norm() + d);
  std::vector<Vec2> box{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
  Polygon2 section = Polygon2::from_ccw(box);
  for (const Vec2& v : u) section = section.clipped(v, 0.5 * d);
  out.section = section;
  out.section_width = out.strip ? d : width2(section).width;
  if (!out.strip) out.section_inradius = chebyshev_inscribed(section).radius;

  // I is the prism over I ∩ H along the axis; truncate it far from H.
  const double reach = 10.0 * big / delta.z();
  std::vector<Vec3> prism;
  for (const Vec2& q : section.vertices()) {
    prism.push_back(Vec3(q.x(), q.y(), 0.0) + reach * delta);
    prism.push_back(Vec3(q.x(), q.y(), 0.0) - reach * delta);
  }
  const int samples = std::max(options.theta_samples, 8);
  out.min_wh_section_projection = min_horizontal_width(build_hull(prism, tol), samples).value;
  out.min_wh_lower = min_horizontal_width(*split.lower, samples).value;
  out.min_wh_union = min_horizontal_width(split.body, samples).value;
  out.width = width3(k).width;
  out.three_halves_d = 1.5 * d;

  out.width_le_lower = out.width <= out.min_wh_lower + tol.opt;
  out.lower_lt_section = out.min_wh_lower < out.min_wh_section_projection - tol.geom;
  out.projection_eq_section = std::abs(out.min_wh_section_projection - out.section_width) < 1e-6;
  out.section_le_bound = out.section_width <= out.three_halves_d + tol.opt;
  return out;
}

TriangleFit fit_equilateral_triangle(const Polygon2& p, double height) {
  if (p.is_degenerate()) throw GeometryError(ErrorKind::DegenerateInput, "cannot fit a triangle to a degenerate polygon");
  const Vec2 c0 = p.centroid();
  Vec2 far = p.vertices().front();
  for (const Vec2& v : p.vertices()) {
    if ((v - c0).norm() > (far - c0).norm()) far = v;
  }
  const double psi0 = std::atan2(far.y() - c0.y(), far.x() - c0.x());
  auto objective = [&](const Eigen::VectorXd& x) {
    return hausdorff_distance(p, equilateral({x[0], x[1]}, x[2], height));
  };
  TriangleFit best;
  best.hausdorff = std::numeric_limits<double>::infinity();
  for (const double offset : {0.0, std::numbers::pi / 3.0, std::numbers::pi / 6.0, -std::numbers::pi / 6.0}) {
    Eigen::VectorXd x0(3);
    x0 << c0.x(), c0.y(), psi0 + offset;
    const auto r = opt::nelder_mead(objective, x0, 0.05 * height, 1e-12 * std::max(1.0, height), 4000);
    if (r.value < best.hausdorff) {
      best.center = {r.x[0], r.x[1]};
      best.rotation = std::remainder(r.x[2], 2.0 * std::numbers::pi / 3.0);
      best.hausdorff = r.value;
    }
  }
  best.height = height;
  best.triangle = equilateral(best.center, best.rotation, height);
  return best;
}

ExtremalityDiagnostics extremality_diagnostics(const ChainCertificate& chain) {
  ExtremalityDiagnostics out;
  const double d = chain.diameter;
  out.gap = chain.three_halves_d / chain.width - 1.0;
  if (chain.strip) {
    out.hausdorff = std::numeric_limits<double>::infinity();
    out.cluster_distance = std::numeric_limits<double>::infinity();
    return out;
  }
  out.fit = fit_equilateral_triangle(chain.section, chain.section_width);
  out.hausdorff = out.fit.hausdorff * 2.0 / d;

  // Parts of the upper slice outside the disk of diameter d about its center
  // should concentrate near the three directions opposite the triangle's vertices.
  std::vector<Vec2> reference;
  for (const Vec2& v : out.fit.triangle.vertices()) reference.push_back(-(v - out.fit.center).normalized());
  const Vec2 ch(chain.slice_center.x(), chain.slice_center.y());
  const double r = 0.5 * d;
  const auto& poly = chain.slice_polygon.vertices();
  double worst = 0.0;
  auto consider = [&](const Vec2& p) {
    const Vec2 w = p - ch;
    if (w.norm() <= r * (1.0 + 1e-12)) return;
    const Vec2 dir = w.normalized();
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec2& ref : reference) nearest = std::min(nearest, (dir - ref).norm());
    worst = std::max(worst, nearest);
  };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    for (int s = 0; s <= 64; ++s) consider(a + (b - a) * (s / 64.0));
    // Exact crossings with the circle, nudged outward.
    const Vec2 e = b - a;
    const Vec2 f = a - ch;
    const double qa = e.squaredNorm();
    const double qb = 2.0 * e.dot(f);
    const double qc = f.squaredNorm() - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (qa > 0 && disc >= 0) {
      for (const double sgn : {-1.0, 1.0}) {
        const double s = (-qb + sgn * std::sqrt(disc)) / (2.0 * qa);
        if (s >= 0.0 && s <= 1.0) {
          const Vec2 p = a + s * e;
          consider(ch + (p - ch) * (1.0 + 1e-9));
        }
      }
    }
  }
  out.cluster_distance = worst;
  return out;
}

ExtremalityDiagnostics extremality_diagnostics(const Polytope3& k, const Circle3& c, const Tolerances& tol) {
  return extremality_diagnostics(chain_certificate(k, c, {}, tol));
}

}  // namespace holdcert
